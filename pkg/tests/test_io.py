import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamsim import gallery, io
from tamsim.atam_compiler import compile_atam_system
from tamsim.corpus import random_atam_system, random_datam_system
from tamsim.duple_compiler import compile_datam_system
from tamsim.dynamics import LEX, RANDOM, SequencePolicy, run
from tamsim.errors import (AsymmetricGlueError, GeometrySizeError, InvalidGlueError, SchemaError,
                           UnstableSeedError)
from tamsim.model import Geometry

GALLERY = {
    "mismatch_square": gallery.mismatch_square_system,
    "flexible_glue_demo": gallery.flexible_glue_demo,
    "period_line": lambda: gallery.period_line_system(3),
    "zigzag_counter": lambda: gallery.zigzag_counter(3),
    "planter_sass": lambda: gallery.planter_sass(5),
    "arm_cup": lambda: gallery.arm_cup_system(2),
    "duple_blocking_demo": gallery.duple_blocking_demo,
}


@pytest.mark.parametrize("name", sorted(GALLERY))
def test_fixture_round_trip(fixtures, name):
    text = (fixtures / f"{name}.json").read_text()
    assert io.serialize_system(io.parse_system(text)) == text
    # the stored file is exactly what the constructor produces today
    assert io.serialize_system(GALLERY[name]()) == text


@pytest.mark.parametrize("trace, system, size", [("period_line_trace", "period_line", 100),
                                                  ("zigzag_counter_trace", "zigzag_counter", 48)])
def test_traces_replay(fixtures, trace, system, size):
    T = io.parse_system((fixtures / f"{system}.json").read_text())
    text = (fixtures / f"{trace}.json").read_text()
    seq = io.parse_trace(text, T)
    assert len(seq.final) == size
    assert seq.final.digest() == json.loads(text)["final_digest"]
    assert io.serialize_trace(seq) == text
    # a fresh LEX run reproduces the recorded trace
    assert io.serialize_trace(run(T, SequencePolicy(LEX), size)) == text


def test_assembly_document(fixtures):
    T = io.parse_system((fixtures / "period_line.json").read_text())
    text = (fixtures / "period_line_final.json").read_text()
    a = io.parse_assembly(text, T)
    assert io.serialize_assembly(T, a) == text
    trace = io.parse_trace((fixtures / "period_line_trace.json").read_text(), T)
    assert trace.final == a


def test_geometry_string_reading():
    g = Geometry.from_string("10110")
    assert [i for i in range(1, 6) if g[i]] == [1, 3, 4]


def _doc(sys):
    return json.loads(io.serialize_system(sys))


def test_asymmetric_matrix_is_rejected():
    d = _doc(gallery.flexible_glue_demo())
    d["glues"]["matrix"][1][2] = 0
    with pytest.raises(AsymmetricGlueError):
        io.parse_system(json.dumps(d))


def test_geometry_length_mismatch():
    U, _ = compile_atam_system(gallery.mismatch_square_system())
    d = _doc(U)
    d["tiles"][0]["geometries"][0] = "101"
    with pytest.raises(GeometrySizeError):
        io.parse_system(json.dumps(d))


def test_unstable_seed_and_unknown_glue():
    d = _doc(gallery.mismatch_square_system())
    d["seed"].append(["U", 5, 5])
    with pytest.raises(UnstableSeedError):
        io.parse_system(json.dumps(d))
    d = _doc(gallery.mismatch_square_system())
    d["tiles"][1]["glues"][0] = "zzz"
    with pytest.raises(InvalidGlueError):
        io.parse_system(json.dumps(d))


@pytest.mark.parametrize("edit, path", [
    (lambda d: d.update(temperature="one"), "temperature"),
    (lambda d: d["tiles"][0].update(name=3), "tiles/0/name"),
    (lambda d: d.pop("seed"), "(document)"),
    (lambda d: d.update(format="other"), "format"),
])
def test_schema_errors_name_the_field(edit, path):
    d = _doc(gallery.mismatch_square_system())
    edit(d)
    with pytest.raises(SchemaError) as info:
        io.parse_system(json.dumps(d))
    assert info.value.details["path"] == path
    assert str(info.value).startswith("[E_SCHEMA] " + path)


def test_malformed_json_reports_the_line():
    with pytest.raises(SchemaError) as info:
        io.parse_system('{\n  "format": \n}')
    assert info.value.details["line"] == 3


def test_tampered_digests_are_caught(fixtures):
    T = io.parse_system((fixtures / "period_line.json").read_text())
    d = json.loads((fixtures / "period_line_final.json").read_text())
    d["tiles"].pop()
    with pytest.raises(SchemaError, match="digest"):
        io.parse_assembly(json.dumps(d), T)
    d = json.loads((fixtures / "period_line_trace.json").read_text())
    d["steps"].pop()
    with pytest.raises(SchemaError, match="final_digest"):
        io.parse_trace(json.dumps(d), T)


def test_representation_round_trip():
    T = gallery.mismatch_square_system()
    U, vm = compile_atam_system(T)
    rep = vm.representation(T)
    text = io.serialize_representation(rep, U)
    back = io.parse_representation(text, U, T)
    assert back.table == rep.table and back.scale == 1 and back.lone_half == "footprint"
    assert io.serialize_representation(back, U) == text


def test_duple_representation_round_trip():
    D = gallery.duple_blocking_demo()
    S, vm = compile_datam_system(D)
    for mode in ("footprint", "empty"):
        rep = vm.representation(D, mode)
        back = io.parse_representation(io.serialize_representation(rep, S), S, D)
        assert back.table == rep.table and back.lone_half == mode


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_random_systems_round_trip(seed, duples):
    T = random_datam_system(seed) if duples else random_atam_system(seed)
    text = io.serialize_system(T)
    back = io.parse_system(text)
    assert io.serialize_system(back) == text
    assert back.glues.strengths == T.glues.strengths and back.seed == T.seed
    seq = run(T, SequencePolicy(RANDOM, seed), 20)
    assert io.parse_trace(io.serialize_trace(seq), back).final == seq.final
