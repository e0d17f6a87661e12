"""Local module presentations and the local-to-graded bridge.

A module is presented as M = F/N with N inside m*F (columns of positive
order; violating inputs are rejected, not normalized).  The initial
submodule of N (generated by all initial forms of elements of N) is read
off a certified local standard basis; this bridge is never taken on faith:
generator degrees are cross-checked against the truncation oracle wherever
a verdict depends on them, and disagreements raise BridgeError.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle
from .complexes import FINITE, TRUNCATED, Matrix, min_gens_with_syz, resolve_bounded
from .engine import standard_basis
from .orders import DS, GREVLEX
from .poly import FreeLayout, Polynomial, Vector
from .rings import LocalRing, ZeroInQuotientError


class BridgeError(RuntimeError):
    """Engine and oracle (or two equivalent criteria) disagree: a bug, not data."""


class SubmoduleNotInMaximalIdeal(ValueError):
    pass


class LocalModule:
    """M = F/N over a local ring, N a submodule of m*F."""

    def __init__(self, ring: LocalRing, layout: FreeLayout, gens):
        if any(t != 0 for t in layout.twists):
            raise ValueError("local layouts carry zero twists")
        self.ring = ring
        self.layout = layout
        cleaned = []
        for g in gens:
            if isinstance(g, Polynomial):
                g = Vector.from_polys([g])
            if g.rank != layout.rank:
                raise ValueError("generator rank mismatch")
            g = ring.nf_vector(g)
            if g.is_zero():
                continue
            if any(ring.is_unit(g.component(c)) for c in range(layout.rank)):
                raise SubmoduleNotInMaximalIdeal("N ⊆ mF required")
            cleaned.append(g)
        self.gens = cleaned
        self._cache = {}

    @property
    def is_free(self):
        return not self.gens

    def order(self):
        """nu(N): minimal column order (undefined for N = 0)."""
        if not self.gens:
            raise ZeroInQuotientError("N = 0 has no order")
        return min(self.ring.vector_order(g) for g in self.gens)

    def __repr__(self):
        return f"LocalModule(rank {self.layout.rank} / {len(self.gens)} relations)"


@dataclass
class InitialData:
    """The initial submodule of N inside the associated graded of F."""

    order: int                      # s = nu(N)
    generators: list                # minimal homogeneous generators, over A
    input_is_standard_basis: bool
    generator_degrees: tuple        # sorted multiset of minimal generator degrees


def submodule_initial(mpres: LocalModule) -> InitialData:
    """Initial forms of a certified basis of N, minimalized over A."""
    if "initial" in mpres._cache:
        return mpres._cache["initial"]
    if mpres.is_free:
        raise ZeroInQuotientError("N = 0 has no initial data")
    ring = mpres.ring
    A = ring.graded_cover
    sb = standard_basis(mpres.gens, DS, mpres.layout, modulus=ring.ideal_sb)
    forms = []
    for g in sb.gens:
        v = A.nf_vector(g.initial_form())
        if v:
            forms.append(v)
    min_gens, _ = min_gens_with_syz(forms, mpres.layout, A)
    degrees = tuple(sorted(v.degree_in(mpres.layout) for v in min_gens))
    s = mpres.order()
    if degrees and degrees[0] != s:
        raise BridgeError("min initial-form degree differs from nu(N)")
    # do the initial forms of the *given* generators already generate?
    given = [w for w in (A.nf_vector(g.initial_form()) for g in mpres.gens) if w]
    basis_given = standard_basis(given, GREVLEX, mpres.layout, modulus=A.ideal_sb)
    flag = all(basis_given.contains(v) for v in min_gens)
    basis_full = standard_basis(min_gens, GREVLEX, mpres.layout, modulus=A.ideal_sb)
    if not all(basis_full.contains(v) for v in given):
        raise BridgeError("initial forms of generators escape the initial submodule")
    data = InitialData(s, min_gens, flag, degrees)
    mpres._cache["initial"] = data
    return data


def assoc_graded_module(mpres: LocalModule):
    """Presentation of the associated graded module over A."""
    from .graded import GradedModule

    if "assoc" in mpres._cache:
        return mpres._cache["assoc"]
    A = mpres.ring.graded_cover
    rels = [] if mpres.is_free else submodule_initial(mpres).generators
    gmod = GradedModule(A, mpres.layout, rels)
    mpres._cache["assoc"] = gmod
    return gmod


def order_in_quotient(f: Polynomial, ring: LocalRing):
    """(nu, initial form class in A); error on elements of the ideal."""
    return ring.order_of(f)


def minimal_generators(mpres: LocalModule):
    """A minimal generating set of N (Nakayama unit-stripping)."""
    if "mingens" not in mpres._cache:
        cols, _ = min_gens_with_syz(mpres.gens, mpres.layout, mpres.ring)
        mpres._cache["mingens"] = cols
    return mpres._cache["mingens"]


# ------------------------------------------------------------- resolutions


@dataclass
class LocalResolution:
    """Minimal free resolution data over the local ring, up to a cutoff."""

    module: LocalModule
    mats: list                      # Matrix phi_1..phi_k, minimal
    status: str                     # FINITE | TRUNCATED
    pdim: int                       # valid when FINITE
    cutoff: int

    @property
    def betti(self):
        return [m.source.rank for m in self.mats]

    @property
    def ranks(self):
        return [self.mats[0].target.rank if self.mats else self.module.layout.rank] + self.betti

    def column_orders(self, i):
        """Orders of the columns of phi_i (1-based)."""
        ring = self.module.ring
        return [ring.vector_order(v) for v in self.mats[i - 1].columns]

    @property
    def s(self):
        """s_i = nu(phi_i), per homological degree 1..len."""
        ring = self.module.ring
        return [min(self.column_orders(i)) for i in range(1, len(self.mats) + 1)]

    @property
    def delta(self):
        """delta_i = s_1 + ... + s_i with delta_0 = 0."""
        out = [0]
        for si in self.s:
            out.append(out[-1] + si)
        return out

    @property
    def finite(self):
        return self.status == FINITE


def local_minimal_resolution(mpres: LocalModule, cutoff: int) -> LocalResolution:
    """Iterated minimal syzygies over R, stopping at the homological cutoff."""
    cached = mpres._cache.get("resolution")
    if cached is not None and (cached.finite or cached.cutoff >= cutoff):
        if cached.finite or cached.cutoff == cutoff:
            res = cached
        else:
            res = LocalResolution(mpres, cached.mats[:cutoff], TRUNCATED, -1, cutoff)
        return _trim(res, cutoff)
    if mpres.is_free:
        res = LocalResolution(mpres, [], FINITE, 0, cutoff)
    else:
        raw = resolve_bounded(mpres.gens, mpres.layout, mpres.ring, cutoff, graded=False)
        res = LocalResolution(mpres, raw.mats, raw.status, raw.pdim, cutoff)
    if cached is None or (res.cutoff > cached.cutoff and not cached.finite):
        mpres._cache["resolution"] = res
    return res


def _trim(res: LocalResolution, cutoff: int) -> LocalResolution:
    if res.finite and res.pdim <= cutoff:
        return res
    if len(res.mats) <= cutoff and res.cutoff == cutoff:
        return res
    return LocalResolution(res.module, res.mats[:cutoff], TRUNCATED, -1, cutoff)


def initial_matrix(mat: Matrix, ring: LocalRing):
    """(s, initial matrix over A): entries of order s survive as initial
    forms, strictly deeper entries become zero."""
    A = ring.graded_cover
    entries = [[ring.nf(mat.entry(r, c)) for c in range(mat.source.rank)]
               for r in range(mat.target.rank)]
    orders = [
        e.order() for row in entries for e in row if not e.is_zero()
    ]
    if not orders:
        raise ZeroInQuotientError("initial form of the zero matrix")
    s = min(orders)
    cols = []
    for c in range(mat.source.rank):
        terms = {}
        for r in range(mat.target.rank):
            e = entries[r][c]
            if e.is_zero() or e.order() != s:
                continue
            f = A.nf(e.initial_form())
            for exps, a in f.terms.items():
                terms[(r, exps)] = a
        cols.append(Vector(ring.cover, mat.target.rank, terms))
    return s, cols


# ------------------------------------------------------- equigeneration


@dataclass
class EquigenReport:
    verdict: bool
    order: int
    generator_degrees: tuple        # path A: minimal generator degrees of the initial submodule
    intersection_condition: bool    # path B: N | m^{s+1} F == m N
    mu_condition: bool              # path B: mu(initial submodule) == mu(N)
    mu_n: int
    mu_nstar: int
    truncation: int


def _oracle_equigen(mpres: LocalModule, s: int, jmax: int, t: int):
    fmodel = oracle.FreeModel(mpres.ring, mpres.layout.rank, t)
    gens = mpres.gens
    inter = oracle.filtration_intersection(fmodel, gens, s + 1)
    msub = fmodel.submodule(gens, min_mult_deg=1)
    cond_intersection = inter == msub
    oracle._window_check(gens, 1, t)
    mu_n = fmodel.submodule(gens).rank - msub.rank
    _, mus = oracle.submodule_layer_data(fmodel, gens, jmax)
    mu_nstar = sum(mus.values())
    return cond_intersection, mu_n, mu_nstar


def equigenerated_check(mpres: LocalModule, truncation: int = 12) -> EquigenReport:
    """Equigeneration of the initial submodule, decided along two routes.

    Path A reads minimal generator degrees from the engine; path B checks
    the intersection condition and the generator-count condition through
    the truncation oracle (verified stable under t -> t+1).  The two paths
    agreeing is a theorem; disagreement raises BridgeError.
    """
    if mpres.is_free:
        raise ZeroInQuotientError("N = 0: equigeneration undefined")
    data = submodule_initial(mpres)
    s = data.order
    degrees = data.generator_degrees
    path_a = all(d == s for d in degrees)
    jmax = max(degrees)
    answers = []
    for t in (truncation, truncation + 1):
        oracle._window_check(mpres.gens, max(jmax, s + 1) + 1, t)
        answers.append(_oracle_equigen(mpres, s, jmax, t))
    if answers[0] != answers[1]:
        raise oracle.OracleWindowError("oracle answers unstable under t -> t+1")
    cond_intersection, mu_n, mu_nstar = answers[0]
    if mu_nstar != len(degrees):
        raise BridgeError(
            f"oracle counts {mu_nstar} minimal initial generators, engine {len(degrees)}"
        )
    mu_condition = mu_nstar == mu_n
    path_b = cond_intersection and mu_condition
    if path_a != path_b:
        raise BridgeError("equigeneration criteria (i) and (iv) disagree")
    return EquigenReport(
        path_a, s, degrees, cond_intersection, mu_condition, mu_n, mu_nstar, truncation
    )
