"""Witness systems, built at desk scale."""
from __future__ import annotations

from .model import (ATAM, DATAM, GTAM, HORIZONTAL, DupleTile, GeometricTile, Geometry,
                    GlueFunction, SquareTile, TileSystem)

FLEXIBLE_MATRIX = (
    (0, 1, 0, 1),
    (1, 1, 0, 0),
    (0, 0, 1, 0),
    (1, 0, 0, 1),
)


def _with_null(matrix):
    n = len(matrix)
    return ((0,) * (n + 1),) + tuple((0,) + tuple(row) for row in matrix)


def mismatch_square_system():
    """Five tiles, each glue binding only itself; two different 2x2 squares can form.

    S is the seed.  U grows north of S and R east of S.  The corner (1, 1)
    is contested: A binds R's green glue but shows blue to U's red, and B
    binds U's red glue but shows blue to R's green.
    """
    names = ("null", "cyan", "orange", "green", "red", "blue")
    gf = GlueFunction.from_diagonal(names, (0, 1, 1, 1, 1, 1))
    cyan, orange, green, red, blue = range(1, 6)
    tiles = [
        SquareTile("S", (cyan, orange, 0, 0)),
        SquareTile("U", (0, red, cyan, 0)),
        SquareTile("R", (green, 0, 0, orange)),
        SquareTile("A", (0, 0, green, blue)),
        SquareTile("B", (0, 0, blue, red)),
    ]
    return TileSystem(ATAM, gf, tiles, [(0, (0, 0))], 1)


def flexible_glue_demo():
    """Three tiles over four glues whose binding pattern is ``FLEXIBLE_MATRIX``.

    Glue 1 binds 2 and 4 but not itself; glue 2 binds 1 and itself; glue 3
    binds only itself; glue 4 binds 1 and itself.
    """
    gf = GlueFunction(("null", "g1", "g2", "g3", "g4"), _with_null(FLEXIBLE_MATRIX))
    tiles = [
        SquareTile("seed", (1, 1, 0, 0)),
        SquareTile("east", (3, 4, 0, 2)),
        SquareTile("north", (3, 0, 4, 0)),
    ]
    return TileSystem(ATAM, gf, tiles, [(0, (0, 0))], 1)


def period_line_system(period=3):
    """Temperature-1 line growing east forever, repeating every ``period`` columns.

    The seed shows glue 1 to the east; tile ``p{k}`` takes glue k on its west
    and shows glue k+1 (mod period) on its east.
    """
    names = ("null",) + tuple(f"c{k}" for k in range(period))
    gf = GlueFunction.from_diagonal(names, (0,) + (1,) * period)
    tiles = [SquareTile("seed", (0, 1 + (1 % period), 0, 0))]
    for k in range(period):
        tiles.append(SquareTile(f"p{k}", (0, 1 + (k + 1) % period, 0, 1 + k)))
    return TileSystem(ATAM, gf, tiles, [(0, (0, 0))], 1)


class _GlueBook:
    """Interns glue names with their strengths for diagonal glue functions."""

    def __init__(self):
        self.names, self.strengths, self.ids = ["null"], [0], {}

    def __call__(self, name, strength=1):
        if name is None:
            return 0
        gid = self.ids.get(name)
        if gid is None:
            gid = self.ids[name] = len(self.names)
            self.names.append(name)
            self.strengths.append(strength)
        elif self.strengths[gid] != strength:
            raise ValueError(f"glue {name} used with strengths {self.strengths[gid]} and {strength}")
        return gid

    def function(self):
        return GlueFunction.from_diagonal(tuple(self.names), tuple(self.strengths))


def _role(x, width):
    """Column role in a zig-zag band: B (only column), L (west end), F (east end) or M."""
    if width == 1:
        return "B"
    return "L" if x == 0 else "F" if x == width - 1 else "M"


def zigzag_counter(width=3):
    """Temperature-2 binary counter that snakes upward and halts on overflow.

    Row 0 is the seed (value 0).  Odd rows grow west adding one (the least
    significant bit sits in the east column), even rows grow east copying.
    Value v is written by row 2v - 1, so the run ends after 2^(width+1) rows
    when the increment overflows.
    """
    if width < 1:
        raise ValueError("width must be positive")
    g = _GlueBook()
    roles = ("B",) if width == 1 else ("L", "M", "F")

    def up_from_copy(r, v):
        return g(f"s{r}{v}", 2) if r in "FB" else g(f"b{r}{v}", 1)

    tiles = []
    for r in roles:
        for b in (0, 1):
            for c in ((1,) if r in "FB" else (0, 1)):
                v, co = (b + c) % 2, (b + c) // 2
                south = g(f"s{r}{b}", 2) if r in "FB" else g(f"b{r}{b}", 1)
                east = 0 if r in "FB" else g(f"c{c}", 1)
                if r in "LB":
                    north = g(f"t{r}{v}", 2) if co == 0 else 0
                    west = 0
                else:
                    north, west = g(f"u{r}{v}", 1), g(f"c{co}", 1)
                tiles.append(SquareTile(f"inc_{r}_{b}{c}", (north, east, south, west)))
    for r in roles:
        for v in (0, 1):
            if r in "LB":
                south, west = g(f"t{r}{v}", 2), 0
            else:
                south, west = g(f"u{r}{v}", 1), g("e", 1)
            east = 0 if r in "FB" else g("e", 1)
            tiles.append(SquareTile(f"copy_{r}_{v}", (up_from_copy(r, v), east, south, west)))
    seed = []
    for x in range(width):
        r = _role(x, width)
        tiles.append(SquareTile(f"seed_{x}", (up_from_copy(r, 0), g("z", 2) if x < width - 1 else 0,
                                              0, g("z", 2) if x > 0 else 0)))
        seed.append((len(tiles) - 1, (x, 0)))
    return TileSystem(ATAM, g.function(), tiles, seed, 2)


PLANTER_START = 4


def planter_width(iterations):
    return max(3, (PLANTER_START + iterations - 1).bit_length())


def planter_sass(iterations=5):
    """Temperature-2 single-frontier system that plants one structure per counter value.

    Iteration b (b = 4, 5, ...) starts at a red tile (the seed for the first
    one) and grows:

    * the planter: a row east carrying b in binary under the decremenber
      columns and running 5 columns past them, then a row back west that
      copies the bits;
    * the decremenber: a zig-zag band that subtracts one per pair of rows and
      stops when it reads zero, so it is exactly 2b rows tall;
    * a top row east, 4 tiles past the decremenber, and a green column
      growing down until the planter blocks it;
    * a yellow tile placed by cooperation between the last green tile and the
      planter, and a red tile on the yellow's strength-2 glue which starts the
      next iteration.  After the last iteration the red tile is a cap.

    The band holds ``planter_width(iterations)`` bits with the least
    significant bit in its west column.  The counter value travels from the
    decremenber's west column to the next planter inside glue labels.
    """
    if iterations < 1:
        raise ValueError("iterations must be positive")
    W = planter_width(iterations)
    last = PLANTER_START + iterations - 1
    g = _GlueBook()
    tiles = []

    def add(name, n=None, e=None, s=None, w=None):
        tiles.append(SquareTile(name, (n or 0, e or 0, s or 0, w or 0)))

    def role(k):
        return "L" if k == 1 else "F" if k == W else "M"

    for b in range(PLANTER_START, last + 1):
        if b == PLANTER_START:
            add("origin", e=g(f"pl{b}_1", 2))
        else:
            add(f"red_{b}", e=g(f"pl{b}_1", 2), w=g(f"red{b}", 2))
        for k in range(1, W + 6):
            if k <= W:
                bit, r = (b >> (k - 1)) & 1, role(k)
                north = g(f"pb{r}{bit}" + (f"_{b}" if r == "L" else ""), 1)
            else:
                north = g("bt", 2) if k == W + 5 else None
            add(f"plant_{b}_{k}", n=north, e=g(f"pl{b}_{k + 1}", 2) if k < W + 5 else None,
                w=g(f"pl{b}_{k}", 2))
        # backtrack west-end tile, the dec row's west-end tile and the copy row's west-end tile carry b
        for v in (0, 1):
            add(f"back_L_{v}_{b}", n=g(f"turn{v}_{b}", 2), e=g("bkm", 1), s=g(f"pbL{v}_{b}", 1))
            add(f"dec_L_{v}_{b}", n=g(f"wL{1 - v}_{b}", 1), e=g(f"br{int(v == 0)}", 1),
                s=g(f"turn{v}_{b}", 2))
            for zin in (0, 1):
                z = zin and v == 0
                add(f"copy_L_{v}{zin}_{b}", n=g(f"exit{b}", 2) if z else g(f"turn{v}_{b}", 2),
                    e=g(f"z{zin}", 1), s=g(f"wL{v}_{b}", 1))
        for k in range(1, W + 5):
            add(f"top_{b}_{k}", e=g(f"tp{b}_{k + 1}", 2) if k < W + 4 else None,
                s=g(f"exit{b}", 2) if k == 1 else g(f"g{b}", 2) if k == W + 4 else None,
                w=g(f"tp{b}_{k}", 2) if k > 1 else None)
        add(f"green_{b}", n=g(f"g{b}", 2), e=g(f"y{b}", 1), s=g(f"g{b}", 2))
        add(f"yellow_{b}", e=g(f"red{b + 1}", 2) if b < last else g("cap", 2),
            s=g("ysup", 1), w=g(f"y{b}", 1))
    add("red_cap", w=g("cap", 2))
    # the planter's way back: five extension tiles, then bit-copying tiles
    add("back_5", n=g("ysup", 1), s=g("bt", 2), w=g("bk4", 2))
    for j in range(4, 0, -1):
        add(f"back_{j}", e=g(f"bk{j}", 2), w=g(f"bk{j - 1}", 2) if j > 1 else g("bkd", 1))
    for v in (0, 1):
        add(f"back_F_{v}", n=g(f"uF{v}", 1), e=g("bkd", 1), s=g(f"pbF{v}", 1), w=g("bkm", 1))
        add(f"back_M_{v}", n=g(f"uM{v}", 1), e=g("bkm", 1), s=g(f"pbM{v}", 1), w=g("bkm", 1))
    # decremenber interior: east-going rows subtract, west-going rows copy and test for zero
    for v in (0, 1):
        for c in (0, 1):
            out, borrow = (v - c) % 2, int(v < c)
            add(f"dec_M_{v}{c}", n=g(f"cM{out}", 1), e=g(f"br{borrow}", 1),
                s=g(f"uM{v}", 1), w=g(f"br{c}", 1))
            if not borrow:
                add(f"dec_F_{v}{c}", n=g(f"turnE{out}", 2), s=g(f"uF{v}", 1), w=g(f"br{c}", 1))
        add(f"copy_F_{v}", n=g(f"uF{v}", 1), s=g(f"turnE{v}", 2), w=g(f"z{int(v == 0)}", 1))
        for zin in (0, 1):
            add(f"copy_M_{v}{zin}", n=g(f"uM{v}", 1), e=g(f"z{zin}", 1), s=g(f"cM{v}", 1),
                w=g(f"z{int(zin and v == 0)}", 1))
    return TileSystem(ATAM, g.function(), tiles, [(0, (0, 0))], 2)


ARM_FIRST, ARM_SPACING = 8, 10
CUP_GEOMETRY_LENGTH = 2


def arm_positions(periods):
    return [ARM_FIRST + ARM_SPACING * p for p in range(periods)]


def arm_cup_layout(period):
    """Cells of one period (1-based): the arm and the five centre locations."""
    x = arm_positions(period)[-1]
    return {
        "arm": [(x, 3), (x, 2), (x, 1)],
        "a": (x - 2, 0), "b": (x - 1, 0), "x": (x, 0), "c": (x + 1, 0), "d": (x + 2, 0),
        "walls": [(x - 3, 0), (x + 3, 0)],
    }


def arm_cup_system(periods=2):
    """Temperature-1 geometric system where an arm and a cup compete for one row.

    The seed at (0, 0) grows a column up four tiles and then the top row
    along y = 4, and a bottom row along y = -1.  From top-row offsets 8, 18,
    28, ... an arm (grey, grey, green) grows down.  Under each arm the bottom
    row raises a cup wall three cells to either side, leaving the centre row
    locations a, b, x, c, d free.  A grows from the west wall, B from A, D
    from the east wall, C from D, and X from the green tile above x.  X's
    west and east sides carry bumps that collide with B's east and C's west,
    so X excludes both and either of them excludes X.
    """
    if periods < 1:
        raise ValueError("periods must be positive")
    L = CUP_GEOMETRY_LENGTH
    flat = Geometry(L, 0)
    bump_in = Geometry.from_string("01")   # X's sides
    bump_out = Geometry.from_string("10")  # B's east, C's west
    g = _GlueBook()
    tiles = []

    def add(name, n=None, e=None, s=None, w=None, geoms=None):
        geoms = geoms or {}
        tiles.append(GeometricTile(name, tuple(g(x) for x in (n, e, s, w)),
                                   tuple(geoms.get(d, flat) for d in range(4))))

    arms = set(arm_positions(periods))
    xend = max(arms) + 3
    add("seed", n="up1", s="down")
    for k in range(1, 4):
        add(f"column_{k}", n=f"up{k + 1}", s=f"up{k}")
    add("top_0", e="t1", s="up4")
    for x in range(1, xend + 1):
        add(f"top_{x}", e=f"t{x + 1}" if x < xend else None, s="arm1" if x in arms else None, w=f"t{x}")
    add("grey_1", n="arm1", s="arm2")
    add("grey_2", n="arm2", s="arm3")
    add("green", n="arm3", s="xg")
    add("bottom_0", n="down", e="b1")
    walls_w = {x - 3 for x in arms}
    walls_e = {x + 3 for x in arms}
    for x in range(1, xend + 1):
        north = "wallW" if x in walls_w else "wallE" if x in walls_e else None
        add(f"bottom_{x}", n=north, e=f"b{x + 1}" if x < xend else None, w=f"b{x}")
    add("cup_west", e="cupW", s="wallW")
    add("cup_east", s="wallE", w="cupE")
    add("A", e="ab", w="cupW")
    add("B", w="ab", geoms={1: bump_out})
    add("X", n="xg", geoms={1: bump_in, 3: bump_in})
    add("C", e="dc", geoms={3: bump_out})
    add("D", e="cupE", w="dc")
    return TileSystem(GTAM, g.function(), tiles, [(0, (0, 0))], 1, geometry_length=L)


def duple_blocking_demo():
    """Temperature-1 duple system where a duple and a path of blue tiles want the same cell.

    The seed at (0, 0) offers glue ``d`` east, where the horizontal duple
    ``duple`` can take cells (1, 0) and (2, 0).  Northward it offers ``p1``,
    from which blue tiles go up, east twice and back down into (2, 0).
    Whichever arrives first keeps the other out.
    """
    g = _GlueBook()
    tiles = [
        SquareTile("seed", (g("p1"), g("d"), 0, 0)),
        SquareTile("blue_1", (0, g("p2"), g("p1"), 0)),
        SquareTile("blue_2", (0, g("p3"), 0, g("p2"))),
        SquareTile("blue_3", (0, 0, g("p4"), g("p3"))),
        SquareTile("blue_4", (g("p4"), 0, 0, 0)),
        # exterior edges clockwise from the top-left: N0, N1, E1, S1, S0, W0
        DupleTile("duple", HORIZONTAL, (0, 0, 0, 0, 0, g("d"))),
    ]
    return TileSystem(DATAM, g.function(), tiles, [(0, (0, 0))], 1)


DUPLE_CONTESTED_CELL = (2, 0)
