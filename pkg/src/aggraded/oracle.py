"""Independent verification backend: truncated linear-algebra models.

Everything here is plain dense row reduction over GF(p) on the raw input
presentations (no standard bases, no normal forms): the model of F/m^t F is
the coordinate space of module monomials of degree < t modulo the row space
spanned by all monomial multiples of the defining-ideal generators, and a
submodule is the row space of all monomial multiples of its generators.

Coordinates are sorted degree-ascending (grevlex-descending inside a
degree, component-ascending last), so echelon pivots are exactly the
leading monomials of initial forms: the non-pivot monomials of the quotient
model are the standard monomials of the tangent cone, per component.

Filtration intersections N | m^i F suffer Artin-Rees truncation effects;
they require the validity window ``i + max generator degree + 2 <= t`` and
callers double-check stability under t -> t+1.
"""

from __future__ import annotations

import numpy as np

from .poly import Vector, mon_deg

SIZE_BOUND = 20000
WINDOW_SLACK = 2


class OracleWindowError(ValueError):
    pass


class ModelSizeError(ValueError):
    pass


# ------------------------------------------------------------ linear algebra


def rref_modp(rows, p):
    """Reduced row echelon form over GF(p); returns (matrix, pivot columns)."""
    A = np.asarray(rows, dtype=np.int64) % p
    if A.ndim == 1:
        A = A.reshape(1, -1)
    m, n = A.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        mask = f != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(f[mask], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


class Subspace:
    """A row space over GF(p) in canonical (RREF) form."""

    __slots__ = ("n", "p", "mat", "pivots")

    def __init__(self, n, p, rows=None):
        self.n = n
        self.p = p
        if rows is None or (hasattr(rows, "__len__") and len(rows) == 0):
            self.mat = np.zeros((0, n), dtype=np.int64)
            self.pivots = []
        else:
            self.mat, self.pivots = rref_modp(rows, p)

    @property
    def rank(self):
        return self.mat.shape[0]

    def reduce(self, vec):
        v = np.asarray(vec, dtype=np.int64) % self.p
        for row, c in zip(self.mat, self.pivots):
            a = int(v[c])
            if a:
                v = (v - a * row) % self.p
        return v

    def contains(self, vec):
        return not self.reduce(vec).any()

    def __add__(self, other):
        if other.rank == 0:
            return self
        if self.rank == 0:
            return other
        return Subspace(self.n, self.p, np.vstack([self.mat, other.mat]))

    def intersect(self, other):
        """Zassenhaus: rows with vanishing left half of rref([U U; V 0])."""
        if self.rank == 0 or other.rank == 0:
            return Subspace(self.n, self.p)
        top = np.hstack([self.mat, self.mat])
        bot = np.hstack([other.mat, np.zeros_like(other.mat)])
        R, _ = rref_modp(np.vstack([top, bot]), self.p)
        left = R[:, : self.n]
        keep = ~left.any(axis=1)
        rows = R[keep, self.n:]
        return Subspace(self.n, self.p, rows if rows.size else None)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.pivots == other.pivots
            and self.mat.shape == other.mat.shape
            and bool((self.mat == other.mat).all())
        )

    def __le__(self, other):
        return all(other.contains(row) for row in self.mat)


# -------------------------------------------------------------- enumeration


def monomials_below(nvars, t):
    """All exponent tuples of total degree < t."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    for d in range(t):
        start = len(out)
        rec([], nvars, d)
        # keep only the exact degree d block
        out[start:] = [m for m in out[start:] if sum(m) == d]
    return out


# ------------------------------------------------------------------- models


class FreeModel:
    """Model of F / m^t F over R = Loc(k[x])/I, rank ``rank``."""

    def __init__(self, ring, rank, t, size_bound=SIZE_BOUND):
        if t < 1:
            raise ValueError("truncation must be >= 1")
        self.ring = ring
        self.rank = rank
        self.t = t
        cover = ring.cover
        self.p = cover.p
        mons = monomials_below(cover.nvars, t)
        coords = [(c, e) for e in mons for c in range(rank)]
        coords.sort(key=lambda ce: (mon_deg(ce[1]), tuple(x for x in reversed(ce[1])), ce[0]))
        if len(coords) > size_bound:
            raise ModelSizeError(f"model needs {len(coords)} coordinates (bound {size_bound})")
        self.coords = coords
        self.index = {ce: i for i, ce in enumerate(coords)}
        self.coord_degs = np.array([mon_deg(e) for (_, e) in coords], dtype=np.int64)
        self.n = len(coords)
        self._rel = None
        self._deg_cache = {}
        self._sub_cache = {}

    # -- rows ---------------------------------------------------------------

    def row_of(self, vec: Vector):
        row = np.zeros(self.n, dtype=np.int64)
        for (c, e), a in vec.terms.items():
            i = self.index.get((c, e))
            if i is not None:
                row[i] = a % self.p
        return row

    def _multiple_rows(self, cols, min_mult_deg=0):
        """Rows of x^a * col for all monomials with deg(x^a) >= min_mult_deg."""
        cover = self.ring.cover
        rows = []
        for col in cols:
            if not col.terms:
                continue
            low = min(mon_deg(e) for (_, e) in col.terms)
            for a in monomials_below(cover.nvars, max(self.t - low, 1)):
                if mon_deg(a) < min_mult_deg:
                    continue
                row = np.zeros(self.n, dtype=np.int64)
                hit = False
                for (c, e), v in col.terms.items():
                    ee = tuple(x + y for x, y in zip(a, e))
                    i = self.index.get((c, ee))
                    if i is not None:
                        row[i] = (row[i] + v) % self.p
                        hit = True
                if hit and row.any():
                    rows.append(row)
        return rows

    # -- canonical subspaces --------------------------------------------------

    @property
    def relations(self) -> Subspace:
        """Image of I*F, from raw ideal generators."""
        if self._rel is None:
            cols = [
                Vector(self.ring.cover, self.rank, {(c, e): a for e, a in g.terms.items()})
                for g in self.ring.ideal
                for c in range(self.rank)
            ]
            self._rel = Subspace(self.n, self.p, self._multiple_rows(cols) or None)
        return self._rel

    def degree_part(self, i) -> Subspace:
        """relations + span of module monomials of degree >= i."""
        if i not in self._deg_cache:
            sel = np.nonzero(self.coord_degs >= i)[0]
            rows = np.zeros((len(sel), self.n), dtype=np.int64)
            rows[np.arange(len(sel)), sel] = 1
            base = self.relations
            stack = np.vstack([base.mat, rows]) if base.rank else rows
            self._deg_cache[i] = Subspace(self.n, self.p, stack if stack.size else None)
        return self._deg_cache[i]

    def submodule(self, cols, min_mult_deg=0) -> Subspace:
        """relations + image of the R-span of cols (through m^min_mult_deg)."""
        key = (
            tuple(tuple(sorted(c.terms.items())) for c in cols),
            min_mult_deg,
        )
        if key not in self._sub_cache:
            rows = self._multiple_rows(cols, min_mult_deg)
            base = self.relations
            if base.rank:
                rows = list(base.mat) + rows
            self._sub_cache[key] = Subspace(self.n, self.p, rows or None)
        return self._sub_cache[key]

    def dims_by_degree(self, space: Subspace):
        """#coords(deg d) - #pivots(deg d), for d < t: layer dims mod ``space``."""
        pivot_degs = [int(self.coord_degs[c]) for c in space.pivots]
        out = []
        for d in range(self.t):
            total = int((self.coord_degs == d).sum())
            out.append(total - sum(1 for x in pivot_degs if x == d))
        return out


class TruncatedModel:
    """Quotient model of (F/N)/m^t with standard-monomial basis and maps."""

    def __init__(self, ring, rank, relation_cols, t, size_bound=SIZE_BOUND):
        self.free = FreeModel(ring, rank, t, size_bound)
        self.t = t
        self.relation_cols = list(relation_cols)
        self.space = self.free.submodule(self.relation_cols) if relation_cols else self.free.relations
        self.layer_dims = self.free.dims_by_degree(self.space)
        pivset = set(self.space.pivots)
        self.basis = [ce for i, ce in enumerate(self.free.coords) if i not in pivset]
        self.basis_index = {ce: i for i, ce in enumerate(self.basis)}
        self._varmaps = None

    @property
    def dim(self):
        return sum(self.layer_dims)

    def contains(self, vec: Vector):
        """Membership of a lift in N + m^t F (+ I F)."""
        return self.space.contains(self.free.row_of(vec))

    def coords_of(self, vec: Vector):
        red = self.space.reduce(self.free.row_of(vec))
        out = np.zeros(len(self.basis), dtype=np.int64)
        for i in np.nonzero(red)[0]:
            out[self.basis_index[self.free.coords[int(i)]]] = red[i]
        return out

    @property
    def variable_maps(self):
        """One truncated multiplication map per variable, on the basis."""
        if self._varmaps is None:
            cover = self.free.ring.cover
            maps = []
            for v in range(cover.nvars):
                M = np.zeros((len(self.basis), len(self.basis)), dtype=np.int64)
                for j, (c, e) in enumerate(self.basis):
                    ee = list(e)
                    ee[v] += 1
                    ee = tuple(ee)
                    if mon_deg(ee) >= self.t:
                        continue
                    col = self.coords_of(Vector(cover, self.free.rank, {(c, ee): 1}))
                    M[:, j] = col
                maps.append(M)
            self._varmaps = maps
        return self._varmaps


def build_model(presentation, t, size_bound=SIZE_BOUND) -> TruncatedModel:
    """Model of R/m^t (for a ring presentation) or M/m^t M (for a module)."""
    if hasattr(presentation, "layout") and hasattr(presentation, "gens"):
        return TruncatedModel(
            presentation.ring, presentation.layout.rank, presentation.gens, t, size_bound
        )
    return TruncatedModel(presentation, 1, [], t, size_bound)


# ----------------------------------------------------- filtration queries


def _window_check(gens, i, t):
    maxdeg = max((mon_deg(e) for g in gens for (_, e) in g.terms), default=0)
    if i + maxdeg + WINDOW_SLACK > t:
        raise OracleWindowError(
            f"oracle window violated: need t >= {i + maxdeg + WINDOW_SLACK}, have {t}"
        )


def filtration_intersection(model: FreeModel, gens, i, checked=True) -> Subspace:
    """Image of N | m^i F in F/m^t F (window-validated)."""
    if checked:
        _window_check(gens, i, model.t)
    return model.submodule(gens).intersect(model.degree_part(i))


def graded_dims(model: TruncatedModel, degrees):
    """Hilbert-function values and minimal-generator counts of the modeled
    quotient object, by graded Nakayama rank counts."""
    out = {}
    free = model.free
    for d in degrees:
        if d >= model.t:
            raise OracleWindowError("degree range exceeds truncation")
        layer = model.layer_dims[d]
        if d == 0:
            out[d] = (layer, layer)
            continue
        # (irrelevant * object)_d == m^d part of the object: for a quotient
        # object generated in degree 0 this is the whole layer for d >= 1
        out[d] = (layer, 0)
    return out


def submodule_layer_data(model: FreeModel, gens, jmax, checked=True):
    """Layer dims and minimal-generator counts of the initial submodule of
    <gens> in the associated graded of F, for degrees 0..jmax.

    layer_j = ((N | m^j F) + m^{j+1} F) / m^{j+1} F and the generator count
    in degree j is dim layer_j - dim (m * (N | m^{j-1} F) + m^{j+1} F)/...
    """
    if checked:
        _window_check(gens, jmax + 1, model.t)
    dims = {}
    mus = {}
    inter = {j: filtration_intersection(model, gens, j, checked=False) for j in range(jmax + 2)}
    for j in range(jmax + 1):
        above = model.degree_part(j + 1)
        layer = (inter[j] + above).rank - above.rank
        dims[j] = layer
        if j == 0:
            mus[0] = layer
            continue
        prev = inter[j - 1]
        cover = model.ring.cover
        rows = []
        for row in prev.mat:
            vec_terms = {}
            for idx in np.nonzero(row)[0]:
                c, e = model.coords[int(idx)]
                vec_terms[(c, e)] = int(row[idx])
            if not vec_terms:
                continue
            v = Vector(cover, model.rank, vec_terms)
            for x in range(cover.nvars):
                w = cover.gen(x) * v
                r = model.row_of(w)
                if r.any():
                    rows.append(r)
        times_m = Subspace(model.n, model.p, rows or None)
        below = (times_m + above).rank - above.rank
        mus[j] = layer - below
    return dims, mus


def element_order(model: FreeModel, vec: Vector):
    """Largest i with vec in (relations + degree >= i), i.e. the m-adic order
    of the class, or None when the class vanishes below the truncation."""
    row = model.row_of(vec)
    if model.relations.contains(row):
        return None
    i = 0
    while i + 1 < model.t and model.degree_part(i + 1).contains(row):
        i += 1
    if i + 1 >= model.t:
        return None
    return i
