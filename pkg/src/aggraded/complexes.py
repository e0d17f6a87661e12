"""Free complexes, minimalization and bounded minimal resolutions.

A complex is a chain ``F_0 <- F_1 <- ... <- F_n`` of free layouts with
differential matrices.  Minimalization cancels unit entries by Gaussian
elimination; over a local ring a polynomial unit u has no polynomial
inverse, so the denominator-free variant is used (the new differential is
``u*a - b*c`` entrywise, which is the exact elimination composed with a
unit rescaling of one differential -- an isomorphic complex over the
localization).  Scalar units are divided out exactly.

``resolve_bounded`` builds minimal resolutions level by level: syzygy
generators of a minimal generating set are unit-stripped (Nakayama) and the
stripped syzygy matrix doubles as the next level's candidate generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import syzygies
from .poly import FreeLayout, Polynomial, Vector


class NotAComplexError(ValueError):
    pass


class Matrix:
    """Columns of a map source -> target between free layouts."""

    __slots__ = ("target", "source", "columns")

    def __init__(self, target: FreeLayout, source: FreeLayout, columns):
        if len(columns) != source.rank:
            raise ValueError("column count must match source rank")
        self.target = target
        self.source = source
        self.columns = list(columns)

    @property
    def ring(self):
        return self.columns[0].ring if self.columns else None

    def entry(self, r, c) -> Polynomial:
        return self.columns[c].component(r)

    def rows(self):
        return [[self.entry(r, c) for c in range(self.source.rank)] for r in range(self.target.rank)]

    def compose(self, other: "Matrix") -> "Matrix":
        """self o other, as a matrix source(other) -> target(self)."""
        cols = []
        for v in other.columns:
            acc = Vector(v.ring, self.target.rank, {})
            for k in range(other.target.rank):
                f = v.component(k)
                if f:
                    acc = acc + f * self.columns[k]
            cols.append(acc)
        return Matrix(self.target, other.source, cols)

    def is_zero_mod(self, nf_vector) -> bool:
        return all(nf_vector(v).is_zero() for v in self.columns)

    def transpose_entries(self):
        return [[self.entry(r, c) for r in range(self.target.rank)] for c in range(self.source.rank)]

    def __repr__(self):
        return f"Matrix({self.target.rank}x{self.source.rank})"


@dataclass
class FreeComplex:
    """layouts[0..n]; mats[i] maps layouts[i+1] -> layouts[i]."""

    layouts: list
    mats: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.mats) != len(self.layouts) - 1:
            raise ValueError("need one differential per adjacent layout pair")

    @property
    def length(self):
        return len(self.mats)

    def betti_ranks(self):
        return [lay.rank for lay in self.layouts]

    def check_complex(self, nf_vector):
        """Exact consecutive-composition-zero check; raises if violated."""
        for i in range(len(self.mats) - 1):
            if not self.mats[i].compose(self.mats[i + 1]).is_zero_mod(nf_vector):
                raise NotAComplexError(f"composition at position {i + 1} is nonzero")
        return True


# ------------------------------------------------------------ minimalize


def _grid(mat: Matrix):
    return [[mat.entry(r, c) for c in range(mat.source.rank)] for r in range(mat.target.rank)]


def _from_grid(grid, target, source, ring):
    cols = []
    for c in range(source.rank):
        terms = {}
        for r in range(target.rank):
            for e, a in grid[r][c].terms.items():
                terms[(r, e)] = a
        cols.append(Vector(ring, target.rank, terms))
    return Matrix(target, source, cols)


def minimalize(cx: FreeComplex, ctx) -> FreeComplex:
    """Homotopy-equivalent complex with no unit entries in any differential.

    ``ctx`` provides nf(poly) and is_unit(poly) for the ambient (quotient)
    ring.  Input must be a complex; ranks drop by one per cancellation.
    """
    ring = None
    for m in cx.mats:
        if m.columns:
            ring = m.columns[0].ring
            break
    if ring is None:
        return cx
    grids = [_grid(m) for m in cx.mats]
    layouts = [list(l.twists) for l in cx.layouts]

    def find_unit():
        for i, g in enumerate(grids):
            for r in range(len(g)):
                for c in range(len(g[0]) if g else 0):
                    if ctx.is_unit(g[r][c]):
                        return i, r, c
        return None

    while True:
        spot = find_unit()
        if spot is None:
            break
        i, r, c = spot
        g = grids[i]
        u = g[r][c]
        nrows, ncols = len(g), len(g[0])
        scalar = len(u.terms) == 1 and ring._zero_mon in u.terms
        uinv = ring.field.inv(u.constant_term()) if scalar else None
        new = []
        for r2 in range(nrows):
            if r2 == r:
                continue
            row = []
            for c2 in range(ncols):
                if c2 == c:
                    continue
                if scalar:
                    val = g[r2][c2] - uinv * (g[r2][c] * g[r][c2])
                else:
                    val = u * g[r2][c2] - g[r2][c] * g[r][c2]
                row.append(ctx.nf(val))
            new.append(row)
        grids[i] = new
        # adjacent differentials only lose a row / a column
        if i + 1 < len(grids):
            grids[i + 1] = [row for k, row in enumerate(grids[i + 1]) if k != c]
            if not grids[i + 1]:
                grids[i + 1] = [[] for _ in range(0)]
        if i - 1 >= 0:
            grids[i - 1] = [[e for k, e in enumerate(row) if k != r] for row in grids[i - 1]]
        del layouts[i][r]
        del layouts[i + 1][c]

    new_layouts = [FreeLayout(len(tw), tuple(tw)) for tw in layouts]
    mats = []
    for i, g in enumerate(grids):
        tgt, src = new_layouts[i], new_layouts[i + 1]
        grid = g if g else [[] for _ in range(tgt.rank)]
        # normalize shapes for degenerate ranks
        if tgt.rank == 0:
            mats.append(Matrix(tgt, src, [Vector(ring, 0, {}) for _ in range(src.rank)]))
            continue
        if src.rank == 0:
            mats.append(Matrix(tgt, src, []))
            continue
        mats.append(_from_grid(grid, tgt, src, ring))
    return FreeComplex(new_layouts, mats)


# ---------------------------------------------------- bounded resolutions

FINITE = "finite"
TRUNCATED = "truncated"


@dataclass
class ResolutionResult:
    mats: list            # Matrix phi_1 .. phi_k (minimal)
    status: str           # FINITE | TRUNCATED
    pdim: int             # meaningful when status == FINITE
    cutoff: int

    @property
    def betti(self):
        return [m.source.rank for m in self.mats]


def _nf_vector(v, ctx):
    terms = {}
    for comp in range(v.rank):
        f = ctx.nf(v.component(comp))
        for e, a in f.terms.items():
            terms[(comp, e)] = a
    return Vector(v.ring, v.rank, terms)


def min_gens_with_syz(cand, layout, ctx):
    """Minimal generating subset of <cand> and generators of its syzygies.

    Unit entries in the syzygy matrix witness redundant generators
    (Nakayama); they are stripped with denominator-free column operations,
    which keeps the remaining columns generating over the localization.
    """
    ring = ctx.cover
    cand = [v for v in (_nf_vector(v, ctx) for v in cand) if v]
    if not cand:
        return [], []
    syz = syzygies(cand, ctx.order, layout, modulus=ctx.ideal_sb)
    cols = [w for w in (_nf_vector(v, ctx) for v in syz.columns) if w]
    zm = ring._zero_mon

    def find_unit():
        for cidx, col in enumerate(cols):
            for (comp, e), a in sorted(col.terms.items()):
                if e == zm and ctx.is_unit(col.component(comp)):
                    return cidx, comp
        return None

    while True:
        spot = find_unit()
        if spot is None:
            break
        cidx, j = spot
        pivot = cols[cidx]
        u = pivot.component(j)
        out = []
        for k, col in enumerate(cols):
            if k == cidx:
                continue
            a = col.component(j)
            if a:
                col = u * col - a * pivot
            out.append(col)
        # drop generator j, reindex components
        del cand[j]
        cols = []
        for col in out:
            terms = {}
            for (comp, e), val in col.terms.items():
                if comp == j:
                    continue
                terms[(comp - 1 if comp > j else comp, e)] = val
            v = Vector(ring, len(cand), terms)
            v = _nf_vector(v, ctx)
            if v:
                cols.append(v)
    return cand, cols


def resolve_bounded(gens, layout, ctx, cutoff, graded=False):
    """Minimal free resolution of coker(gens in F) up to homological cutoff.

    Over the graded flavor the source twists are the column degrees; over
    the local flavor all twists are zero.  ``ctx`` supplies cover ring,
    order, ideal_sb, nf and is_unit.
    """
    cand = list(gens)
    cur_layout = layout
    mats = []
    status, pdim = TRUNCATED, None
    for step in range(1, cutoff + 1):
        cols, syz = min_gens_with_syz(cand, cur_layout, ctx)
        if not cols:
            status, pdim = FINITE, step - 1
            break
        if graded:
            twists = tuple(v.degree_in(cur_layout) for v in cols)
        else:
            twists = (0,) * len(cols)
        src = FreeLayout(len(cols), twists)
        mats.append(Matrix(cur_layout, src, cols))
        if not syz:
            status, pdim = FINITE, step
            break
        cand, cur_layout = syz, src
    return ResolutionResult(mats, status, pdim if pdim is not None else -1, cutoff)
