"""JSON documents for systems, assemblies, traces and representations.

Every document carries ``format`` and ``version`` and is checked against the
matching schema in ``tamsim/schema``.  Serialisation is canonical: sorted
seeds and placements, one key per line, scalar arrays kept on one line
and a trailing newline, so
``serialize(parse(text)) == text`` for any canonical document.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .dynamics import AssemblySequence
from .errors import ModelError, SchemaError
from .model import (DATAM, GTAM, Assembly, DupleTile, GeometricTile, Geometry, GlueFunction,
                    SquareTile, TileSystem)
from .representation import BlockRepresentation

VERSION = 1


@lru_cache(maxsize=None)
def schema(kind):
    text = resources.files("tamsim").joinpath("schema", f"{kind}.json").read_text()
    return json.loads(text)


def _format(value, indent):
    """Canonical layout: objects one key per line, arrays of scalars on one line."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_format(v, indent + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [inner + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def _dump(doc):
    return _format(doc, 0) + "\n"


def _load(text, kind):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}: {exc.msg}",
                          line=exc.lineno) from None
    validator = jsonschema.Draft202012Validator(schema(kind))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/".join(str(p) for p in err.absolute_path) or "(document)"
        raise SchemaError(f"{path}: {err.message}", path=path)
    return doc


# systems ------------------------------------------------------------------

def system_to_dict(sys: TileSystem):
    gf = sys.glues
    glues = {"names": list(gf.names)}
    if gf.is_diagonal:
        glues["diagonal"] = [gf.strengths[i][i] for i in range(gf.size)]
    else:
        glues["matrix"] = [list(row) for row in gf.strengths]
    tiles = []
    for t in sys.tiles:
        entry = {"name": t.name, "glues": [gf.names[g] for g in t.glues]}
        if isinstance(t, GeometricTile):
            entry["geometries"] = [str(g) for g in t.geometries]
        if isinstance(t, DupleTile):
            entry["duple"] = t.orientation
        tiles.append(entry)
    doc = {"format": "tamsim-system", "version": VERSION, "model": sys.model,
           "temperature": sys.temperature}
    if sys.model == GTAM:
        doc["geometry_length"] = sys.geometry_length
    doc.update({"glues": glues, "tiles": tiles, "seed": _placements(sys, sys.seed)})
    return doc


def _placements(sys, a: Assembly):
    return [[sys.tiles[t].name, x, y] for x, y, t in a.canonical()]


def serialize_system(sys: TileSystem) -> str:
    return _dump(system_to_dict(sys))


def system_from_dict(doc, validate=True) -> TileSystem:
    g = doc["glues"]
    names = tuple(g["names"])
    if "diagonal" in g:
        if len(g["diagonal"]) != len(names):
            raise SchemaError("glues/diagonal: needs one strength per glue name", path="glues/diagonal")
        gf = GlueFunction.from_diagonal(names, tuple(g["diagonal"]))
    else:
        gf = GlueFunction(names, tuple(tuple(r) for r in g["matrix"]))
    model = doc["model"]
    tiles = []
    for k, t in enumerate(doc["tiles"]):
        glues = tuple(gf.index(n) for n in t["glues"])
        if "duple" in t:
            if model != DATAM:
                raise ModelError(f"tiles/{k}: duples need the datam model")
            tiles.append(DupleTile(t["name"], t["duple"], glues))
        elif "geometries" in t:
            tiles.append(GeometricTile(t["name"], glues,
                                       tuple(Geometry.from_string(s) for s in t["geometries"])))
        else:
            tiles.append(SquareTile(t["name"], glues))
    index = {t.name: i for i, t in enumerate(tiles)}
    try:
        seed = [(index[name], (x, y)) for name, x, y in doc["seed"]]
    except KeyError as exc:
        raise SchemaError(f"seed: unknown tile {exc.args[0]!r}", path="seed") from None
    return TileSystem(model, gf, tiles, seed, doc["temperature"],
                      geometry_length=doc.get("geometry_length"), validate=validate)


def parse_system(text, validate=True) -> TileSystem:
    return system_from_dict(_load(text, "system"), validate)


# assemblies and traces ------------------------------------------------------

def serialize_assembly(sys: TileSystem, a: Assembly) -> str:
    return _dump({"format": "tamsim-assembly", "version": VERSION,
                  "tiles": _placements(sys, a), "digest": a.digest()})


def parse_assembly(text, sys: TileSystem) -> Assembly:
    doc = _load(text, "assembly")
    try:
        a = sys.assembly([(name, (x, y)) for name, x, y in doc["tiles"]])
    except ModelError as exc:
        raise SchemaError(f"tiles: {exc.args[0]}", path="tiles") from None
    if a.digest() != doc["digest"]:
        raise SchemaError("digest does not match the listed tiles", path="digest")
    return a


def serialize_trace(seq: AssemblySequence) -> str:
    sys = seq.system
    return _dump({"format": "tamsim-trace", "version": VERSION,
                  "steps": [[sys.tiles[att.tile].name, att.anchor[0], att.anchor[1]]
                            for att in seq.attachments],
                  "final_digest": seq.final.digest()})


def parse_trace(text, sys: TileSystem) -> AssemblySequence:
    """Sequence from the system's seed; the recorded digest is checked on replay."""
    doc = _load(text, "trace")
    steps = [sys.attachment(name, (x, y)) for name, x, y in doc["steps"]]
    seq = AssemblySequence(sys, steps)
    final = seq.replay()
    if final.digest() != doc["final_digest"]:
        raise SchemaError("replayed assembly does not match final_digest", path="final_digest")
    return seq


# representations --------------------------------------------------------------

def _image_name(target, img):
    if isinstance(img, tuple):
        return [target.tiles[img[0]].name, img[1]]
    return target.tiles[img].name


def serialize_representation(rep: BlockRepresentation, simulator: TileSystem) -> str:
    entries = []
    for pattern, img in rep.table.items():
        entries.append({
            "pattern": [None if e is None else [simulator.tiles[e[0]].name, e[1]] for e in pattern],
            "image": _image_name(rep.target, img),
        })
    entries.sort(key=lambda e: json.dumps(e["pattern"]))
    return _dump({"format": "tamsim-representation", "version": VERSION, "scale": rep.scale,
                  "offset": rep.offset, "lone_half": rep.lone_half, "entries": entries})


def parse_representation(text, simulator: TileSystem, target: TileSystem) -> BlockRepresentation:
    doc = _load(text, "representation")
    table = {}
    m = doc["scale"]
    for k, e in enumerate(doc["entries"]):
        if len(e["pattern"]) != m * m:
            raise SchemaError(f"entries/{k}/pattern: needs {m * m} cells", path=f"entries/{k}/pattern")
        try:
            pattern = tuple(None if c is None else (simulator.tile_index(c[0]), c[1])
                            for c in e["pattern"])
            img = e["image"]
            img = (target.tile_index(img[0]), img[1]) if isinstance(img, list) else target.tile_index(img)
        except ModelError as exc:
            raise SchemaError(f"entries/{k}: {exc.args[0]}", path=f"entries/{k}") from None
        table[pattern] = img
    return BlockRepresentation(m, table, target, doc["offset"], doc["lone_half"])
