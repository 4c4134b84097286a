"""Bounded checks of simulation between a simulator S and a simulated system T.

Everything is restricted to T-assemblies of at most ``bound`` tiles.  S is
explored up to assemblies whose image has at most ``bound`` tiles (images
only grow under a valid representation) and at most
``scale**2 * (bound + 4 * (bound + 1))`` tiles in total.

To keep S tractable its assemblies are merged into classes that provably
share their future.  Two S-assemblies are merged when they occupy the same
cells, every cell has the same image label, and every side facing an empty
cell carries an equivalent label.  Side labels l and l' (on sides pointing
in direction d) are equivalent when, for each group of S tiles that agree on
their image label and on every side except the one facing back at d, the
set of interactions with l equals the set of interactions with l'.  Any
tile that could attach against l then has a partner in its group that
attaches against l' and leaves an identical exposed boundary, so the two
classes have the same successors up to this merging.  With no such pairs
the merging is the identity.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

from .dynamics import (DEFAULT_STATE_LIMIT, AssemblySequence, attachable,
                       explore, frontier)
from .errors import ImageConflictError, ResourceLimitError
from .model import STEP, Assembly, TileSystem, opposite
from .representation import (BlockRepresentation, fuzz_violations, rep_star,
                             validity_violations)

PRODUCTIONS = ("productions", "terminals", "clean")
CLAUSES = PRODUCTIONS + ("follows", "models")


@dataclass
class Witness:
    """A replayable counterexample: an assembly sequence in ``system``."""

    system: str  # "simulator" or "simulated"
    sequence: AssemblySequence
    note: str
    extra: tuple = ()

    def replay(self):
        return self.sequence.replay()

    def describe(self):
        steps = ", ".join(f"{self.sequence.system.tiles[a.tile].name}@{a.anchor}"
                          for a in self.sequence.attachments)
        return f"{self.note} [{self.system}: {steps or 'seed only'}]"


@dataclass
class ClauseResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Witness = None
    inconclusive: bool = False


@dataclass
class SimulationReport:
    bound: int
    simulator_cap: int
    clauses: dict = field(default_factory=dict)
    truncated: bool = False
    limit_hit: bool = False
    stats: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.clauses.values())

    @property
    def inconclusive(self):
        return self.limit_hit or any(c.inconclusive for c in self.clauses.values())

    def exit_code(self):
        if not self.passed:
            return 3
        return 4 if self.inconclusive else 0

    def to_text(self):
        lines = [f"bound: {self.bound} simulated tiles (simulator cap {self.simulator_cap})",
                 f"growth truncated by bound: {str(self.truncated).lower()}"]
        for name, c in self.clauses.items():
            verdict = "pass" if c.passed else "FAIL"
            if c.passed and c.inconclusive:
                verdict = "inconclusive"
            lines.append(f"{name}: {verdict}" + (f" - {c.detail}" if c.detail else ""))
            if c.witness is not None:
                lines.append(f"  witness: {c.witness.describe()}")
        for k, v in sorted(self.stats.items()):
            lines.append(f"{k}: {v}")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "bound": self.bound,
            "simulator_cap": self.simulator_cap,
            "truncated": self.truncated,
            "limit_hit": self.limit_hit,
            "passed": self.passed,
            "clauses": {
                n: {"passed": c.passed, "inconclusive": c.inconclusive, "detail": c.detail,
                    "witness": None if c.witness is None else {
                        "system": c.witness.system,
                        "note": c.witness.note,
                        "steps": [[c.witness.sequence.system.tiles[a.tile].name, list(a.anchor)]
                                  for a in c.witness.sequence.attachments]}}
                for n, c in self.clauses.items()},
            "stats": dict(self.stats),
        }


def identity_representation(T: TileSystem) -> BlockRepresentation:
    table = {}
    for t, fp in enumerate(T.footprints):
        for part in range(len(fp)):
            table[((t, part),)] = t if len(fp) == 1 else (t, part)
    return BlockRepresentation(1, table, T)


def exposed_label_classes(S: TileSystem, cell_label):
    """Per direction, map each side label to a canonical equivalent label."""
    canon = []
    for d in range(4):
        back = opposite(d)
        groups = defaultdict(list)
        for t in S.square_tiles:
            lab = S.side_label[t]
            rest = tuple(lab[((0, 0), s)] for s in range(4) if s != back)
            groups[(cell_label(t), rest)].append(lab[((0, 0), back)])
        groups = list(groups.values())
        profiles = {}
        mapping = {}
        for l in sorted({S.side_label[t][((0, 0), d)] for t in S.square_tiles}):
            row = S.interaction[l]
            # an incompatible pair blocks attachment whatever its strength
            prof = tuple(frozenset(row[b] if row[b][1] else (0, False) for b in backs)
                         for backs in groups)
            mapping[l] = profiles.setdefault(prof, l)
        canon.append(mapping)
    return canon


class _Node:
    __slots__ = ("assembly", "image", "parent", "children", "terminal", "expanded")

    def __init__(self, assembly, image, parent):
        self.assembly = assembly
        self.image = image
        self.parent = parent
        self.children = set()
        self.terminal = False
        self.expanded = False


class SimulatorSpace:
    """Bounded, merged state space of S with images under ``rep``."""

    def __init__(self, S: TileSystem, rep: BlockRepresentation, bound, cap=None,
                 state_limit=DEFAULT_STATE_LIMIT, merge=True):
        self.S, self.rep, self.bound = S, rep, bound
        m = rep.scale
        self.cap = cap if cap is not None else m * m * (bound + 4 * (bound + 1))
        self.state_limit = state_limit
        self.truncated = False
        self.limit_hit = False
        self.conflicts = []
        if S.single_cell and m == 1 and rep.offset == 0:
            def label(t):
                return rep.table.get(((t, 0),))
        else:
            def label(t):
                return ("tile", t)
        self._label = label
        self.merging = merge and S.single_cell
        self.canon = exposed_label_classes(S, label) if self.merging else None
        if self.merging:
            self._tsig = [(label(t), tuple(self.canon[d][S.side_label[t][((0, 0), d)]] for d in range(4)))
                          for t in range(len(S.tiles))]
        # incremental keys and images need merging and one cell per block
        self.fast = self.merging and m == 1 and rep.offset == 0 and rep.lone_half == "footprint"
        self.nodes = {}
        self._explore()

    def _entry(self, cells, pos, t):
        lab, exposed = self._tsig[t]
        return (pos, lab, tuple(-1 if (pos[0] + dx, pos[1] + dy) in cells else e
                                for (dx, dy), e in zip(STEP, exposed)))

    def key(self, a: Assembly):
        if not self.merging:
            return a
        cells = a.cells
        return frozenset(self._entry(cells, pos, t) for pos, (t, _) in cells.items())

    def image(self, a):
        try:
            return rep_star(self.rep, a)
        except ImageConflictError:
            return None

    def _grow_image(self, img, pos, t):
        """Image after adding tile ``t`` at ``pos`` (scale-1 fast path); None on overlap."""
        lab = self._label(t)
        if lab is None:
            return img
        target = self.rep.target
        if isinstance(lab, tuple):
            d, part = lab
            dx, dy = target.footprints[d][part]
            att = target.attachment(d, (pos[0] - dx, pos[1] - dy))
        else:
            att = target.attachment(lab, pos)
        if (att.tile, att.anchor) in img.placements:
            return img
        if any(c in img.cells for c in att.cells):
            return None
        return img.attach(att)

    def _successors(self, k, node, options):
        """Yield ``(attachment, key, assembly or None, image)`` for distinct successors."""
        a = node.assembly
        if not self.fast:
            for att in options:
                b = a.attach(att)
                kb = self.key(b)
                yield att, kb, b, (self.nodes[kb].image if kb in self.nodes else self.image(b))
            return
        cells = a.cells
        seen_here = set()
        for att in options:
            (q,) = att.cells
            entry = self._entry(cells, q, att.tile)
            if entry in seen_here:
                continue
            seen_here.add(entry)
            img = self._grow_image(node.image, q, att.tile)
            if img is not None and len(img) > self.bound:
                yield att, None, None, img
                continue
            b = a.attach(att)
            nbrs = [(q[0] + dx, q[1] + dy) for dx, dy in STEP]
            nbrs = [p for p in nbrs if p in cells]
            old = {self._entry(cells, p, cells[p][0]) for p in nbrs}
            bc = b.cells
            new = {self._entry(bc, p, bc[p][0]) for p in nbrs}
            new.add(self._entry(bc, q, att.tile))
            yield att, (k - old) | new, b, img

    def _explore(self):
        S = self.S
        seed = S.seed
        k0 = self.key(seed)
        self.seed_key = k0
        img = self.image(seed)
        self.nodes[k0] = _Node(seed, img, None)
        if img is None:
            self.conflicts.append(k0)
        queue = deque([k0])
        while queue:
            k = queue.popleft()
            node = self.nodes[k]
            if node.image is None:
                continue
            options = frontier(S, node.assembly)
            node.terminal = not options
            if options and len(node.assembly) >= self.cap:
                self.truncated = True
                continue
            node.expanded = True
            for att, kb, b, img in self._successors(k, node, options):
                if img is not None and len(img) > self.bound:
                    self.truncated = True
                    continue
                if kb in self.nodes:
                    node.children.add(kb)
                    continue
                self.nodes[kb] = _Node(b, img, (k, att))
                node.children.add(kb)
                if img is None:
                    self.conflicts.append(kb)
                queue.append(kb)
                if len(self.nodes) > self.state_limit:
                    self.limit_hit = True
                    raise ResourceLimitError(
                        f"simulator exploration exceeded {self.state_limit} classes",
                        partial_count=len(self.nodes))

    def sequence_to(self, key):
        steps = []
        while True:
            node = self.nodes[key]
            if node.parent is None:
                break
            key, att = node.parent
            steps.append(att)
        return AssemblySequence(self.S, tuple(reversed(steps)))


class SimulatedSpace:
    """Exact bounded producible set of T with one-step successor lists."""

    def __init__(self, T: TileSystem, bound, state_limit=DEFAULT_STATE_LIMIT):
        self.T = T
        ex = explore(T, bound, state_limit)
        self.producible = ex.producible
        self.terminal = ex.terminal
        self.truncated = ex.truncated
        self.parent = {T.seed: None}
        self.successors = {}
        order = sorted(self.producible, key=len)
        for a in order:
            succ = []
            if len(a) < bound:
                for att in frontier(T, a):
                    b = a.attach(att)
                    succ.append(b)
                    self.parent.setdefault(b, (a, att))
            self.successors[a] = succ

    def sequence_to(self, a):
        steps = []
        while self.parent.get(a) is not None:
            a, att = self.parent[a]
            steps.append(att)
        return AssemblySequence(self.T, tuple(reversed(steps)))


def t_reachable(T: TileSystem, start: Assembly, goal: Assembly):
    """Whether ``goal`` can be grown from ``start`` in T by single attachments."""
    if start == goal:
        return True
    if not start.issubassembly(goal):
        return False
    todo = [start]
    seen = {start}
    while todo:
        a = todo.pop()
        for t, anchor in goal.placements - a.placements:
            att = T.attachment(t, anchor)
            if not attachable(T, a, att):
                continue
            b = a.attach(att)
            if b == goal:
                return True
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return False


class SimulationContext:
    """Shared explorations for the clause checks of one (S, T, rep, bound)."""

    def __init__(self, S, T, rep, bound, cap=None, state_limit=DEFAULT_STATE_LIMIT, merge=True):
        self.S, self.T, self.rep, self.bound = S, T, rep, bound
        self.sim = SimulatorSpace(S, rep, bound, cap, state_limit, merge)
        self.tgt = SimulatedSpace(T, bound, state_limit)

    def report(self, clauses):
        r = SimulationReport(self.bound, self.sim.cap, clauses,
                             truncated=self.sim.truncated or self.tgt.truncated,
                             limit_hit=self.sim.limit_hit)
        r.stats = {"simulator classes": len(self.sim.nodes),
                   "simulated assemblies": len(self.tgt.producible)}
        if self.T.multi_tiles:
            r.stats["lone halves map to"] = self.rep.lone_half
        return r

    def _s_witness(self, key, note):
        return Witness("simulator", self.sim.sequence_to(key), note)

    def _t_witness(self, a, note):
        return Witness("simulated", self.tgt.sequence_to(a), note)

    # -- equivalent productions -------------------------------------------
    def productions(self):
        sim, tgt = self.sim, self.tgt
        if sim.conflicts:
            k = sim.conflicts[0]
            return ClauseResult("productions", False, "simulator assembly has no well-defined image",
                                self._s_witness(k, "image tiles overlap"))
        images = {}
        for k, node in sim.nodes.items():
            images.setdefault(node.image, k)
        for img, k in images.items():
            if img not in tgt.producible:
                return ClauseResult("productions", False, "image is not producible in the simulated system",
                                    self._s_witness(k, f"image {img.canonical()}"))
        for a in sorted(tgt.producible, key=lambda x: (len(x), x.canonical())):
            if a not in images:
                return ClauseResult("productions", False, "producible assembly never represented",
                                    self._t_witness(a, f"missing {a.canonical()}"))
        return ClauseResult("productions", True, f"{len(images)} images")

    def terminals(self):
        sim, tgt = self.sim, self.tgt
        s_term = {}
        for k, node in sim.nodes.items():
            if node.terminal and node.image is not None:
                s_term.setdefault(node.image, k)
        t_term = {a for a in tgt.terminal if len(a) <= self.bound}
        for img, k in s_term.items():
            if img not in t_term:
                return ClauseResult("terminals", False, "simulator terminal maps to a non-terminal assembly",
                                    self._s_witness(k, f"image {img.canonical()}"))
        for a in sorted(t_term, key=lambda x: (len(x), x.canonical())):
            if a not in s_term:
                return ClauseResult("terminals", False, "terminal assembly has no terminal preimage",
                                    self._t_witness(a, f"terminal {a.canonical()}"),
                                    inconclusive=self.sim.truncated)
        return ClauseResult("terminals", True, f"{len(t_term)} terminal assemblies")

    def clean(self):
        for k, node in self.sim.nodes.items():
            if node.image is None:
                continue
            bad = fuzz_violations(node.assembly, self.rep, node.image)
            if bad:
                return ClauseResult("clean", False, f"fuzz outside allowed region at {bad[0]}",
                                    self._s_witness(k, f"violating blocks {bad}"))
        return ClauseResult("clean", True)

    # -- follows -----------------------------------------------------------
    def follows(self):
        T = self.T
        checked = {}
        for k, node in self.sim.nodes.items():
            if node.image is None:
                continue
            for kc in node.children:
                child = self.sim.nodes[kc]
                if child.image is None:
                    continue
                pair = (node.image, child.image)
                ok = checked.get(pair)
                if ok is None:
                    ok = checked[pair] = t_reachable(T, *pair)
                if not ok:
                    seq = self.sim.sequence_to(kc)
                    w = Witness("simulator", seq,
                                f"step from image {node.image.canonical()} to "
                                f"{child.image.canonical()} is not a simulated growth step")
                    return ClauseResult("follows", False, "simulator step not followed", w)
        return ClauseResult("follows", True, f"{len(checked)} image transitions")

    # -- models ------------------------------------------------------------
    def models(self):
        """Pi = every bounded preimage of alpha.

        With that choice the second condition holds by taking alpha' = alpha''
        itself, so only the first condition needs checking: every preimage
        of alpha must be able to grow into some preimage of each one-step
        successor beta.
        """
        sim, tgt = self.sim, self.tgt
        pre = defaultdict(list)
        for k, node in sim.nodes.items():
            if node.image is not None:
                pre[node.image].append(k)
        inconclusive = False
        count = 0
        for alpha in sorted(tgt.producible, key=lambda x: (len(x), x.canonical())):
            for beta in tgt.successors.get(alpha, ()):
                for k in pre.get(alpha, ()):
                    count += 1
                    found, complete = self._reaches(k, beta)
                    if found:
                        continue
                    if not complete:
                        inconclusive = True
                        continue
                    w = self._s_witness(k, f"cannot grow into a preimage of {beta.canonical()}")
                    w.extra = (beta,)
                    return ClauseResult("models", False, "preimage cannot follow a simulated step", w)
        return ClauseResult("models", True, f"{count} (preimage, step) pairs",
                            inconclusive=inconclusive)

    def _reaches(self, start, beta):
        nodes = self.sim.nodes
        todo = [start]
        seen = {start}
        complete = True
        while todo:
            k = todo.pop()
            node = nodes[k]
            if node.image == beta:
                return True, True
            if not node.expanded and not node.terminal:
                complete = False
            for kc in node.children:
                img = nodes[kc].image
                if kc not in seen and img is not None and img.issubassembly(beta):
                    seen.add(kc)
                    todo.append(kc)
        return False, complete


def _context(S, T, rep, bound, context):
    if context is not None:
        return context
    return SimulationContext(S, T, rep, bound)


def check_equivalent_productions(S, T, rep, bound, context=None) -> SimulationReport:
    ctx = _context(S, T, rep, bound, context)
    return ctx.report({"productions": ctx.productions(), "terminals": ctx.terminals(),
                       "clean": ctx.clean()})


def check_follows(S, T, rep, bound, context=None) -> SimulationReport:
    ctx = _context(S, T, rep, bound, context)
    return ctx.report({"follows": ctx.follows()})


def check_models(S, T, rep, bound, context=None) -> SimulationReport:
    ctx = _context(S, T, rep, bound, context)
    return ctx.report({"models": ctx.models()})


def check_simulation(S, T, rep, bound, cap=None, state_limit=DEFAULT_STATE_LIMIT,
                     merge=True) -> SimulationReport:
    """All clauses; a limit hit yields an inconclusive report instead of raising.

    ``merge=False`` explores every simulator assembly separately (slow; used
    as an independent cross-check of the merged exploration).
    """
    bad = validity_violations(rep)
    try:
        ctx = SimulationContext(S, T, rep, bound, cap, state_limit, merge)
    except ResourceLimitError as exc:
        r = SimulationReport(bound, cap or 0, limit_hit=True)
        for name in CLAUSES:
            r.clauses[name] = ClauseResult(name, True, str(exc), inconclusive=True)
        return r
    clauses = {"productions": ctx.productions(), "terminals": ctx.terminals(),
               "clean": ctx.clean(), "follows": ctx.follows(), "models": ctx.models()}
    if bad:
        clauses["representation"] = ClauseResult(
            "representation", False, f"{len(bad)} comparable pattern pairs map to different tiles")
    return ctx.report(clauses)
