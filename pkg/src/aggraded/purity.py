"""Purity of the associated graded module, decided along two routes.

From a minimal local resolution of M one builds the associated graded
complex over A: the i-th differential is the initial matrix of phi_i and
the i-th free module is twisted by delta_i = s_1 + ... + s_i.  This complex
is a minimal A-free resolution of the associated graded module exactly when
that module is pure, so purity can be decided either by inspecting the
directly computed graded Betti table (route A) or by verifying the complex
(route B): the two must agree wherever both are conclusive, and a
disagreement is a build-failing error, not a result.

Fibre products of local rings and the Koszul/fibre-product necessary
conditions live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .complexes import FreeComplex, Matrix
from .engine import standard_basis, syzygies
from .graded import PurityReport, betti_analysis, minimal_graded_resolution
from .modules import (BridgeError, LocalModule, LocalResolution, assoc_graded_module,
                      initial_matrix, local_minimal_resolution, submodule_initial)
from .orders import GREVLEX
from .poly import FreeLayout, Polynomial, PolyRing
from .rings import GradedRing, LocalRing, ideals_equal

PURE = "pure"
NOT_PURE = "not-pure"
INCONCLUSIVE = "inconclusive-at-cutoff"


@dataclass
class InitialComplex:
    """The associated graded complex of a minimal local resolution."""

    complex: FreeComplex          # over A; layouts twisted by -delta_i
    delta: tuple
    s: tuple
    resolution: LocalResolution

    @property
    def ring(self) -> GradedRing:
        return self.resolution.module.ring.graded_cover


def initial_complex(res: LocalResolution) -> InitialComplex:
    """Initial matrices with twists delta_i; the complex property is asserted."""
    ring = res.module.ring
    A = ring.graded_cover
    layouts = [FreeLayout(res.module.layout.rank)]
    mats = []
    s_list = []
    delta = [0]
    for mat in res.mats:
        s, cols = initial_matrix(mat, ring)
        s_list.append(s)
        delta.append(delta[-1] + s)
        src = FreeLayout(mat.source.rank, (delta[-1],) * mat.source.rank)
        mats.append(Matrix(layouts[-1], src, cols))
        layouts.append(src)
    cx = FreeComplex(layouts, mats)
    cx.check_complex(A.nf_vector)
    return InitialComplex(cx, tuple(delta), tuple(s_list), res)


@dataclass
class InitialComplexVerdict:
    is_complex: bool
    acyclic_up_to: int
    homology_witness: tuple = None        # (position, Vector)
    coker_matches: bool = True            # image of the first differential is the initial submodule
    is_minimal: bool = True
    purity_conclusion: str = INCONCLUSIVE
    checked_positions: int = 0
    fully_checked: bool = False
    acyclic_without_coker_match: bool = False


def verify_initial_complex(fs: InitialComplex, cutoff: int) -> InitialComplexVerdict:
    """Homology, cokernel and minimality checks up to the cutoff.

    Homology at position i compares syzygies of the i-th differential with
    the column span of the (i+1)-st by mutual normal-form containment over
    A; the kernel of the last differential is checked directly when the
    source resolution is finite.
    """
    res = fs.resolution
    A = fs.ring
    mats = fs.complex.mats
    n = len(mats)
    maxpos = min(cutoff, n if res.finite else n - 1)
    witness = None
    acyclic_up_to = 0
    for i in range(1, maxpos + 1):
        cols_i = mats[i - 1].columns
        syz = syzygies(cols_i, GREVLEX, mats[i - 1].target, modulus=A.ideal_sb)
        kernel_gens = [v for v in (A.nf_vector(w) for w in syz.columns) if v]
        next_cols = [v for v in mats[i].columns if v] if i < n else []
        if next_cols:
            basis = standard_basis(next_cols, GREVLEX, mats[i].target, modulus=A.ideal_sb)
            bad = next(
                (v for v in kernel_gens if not basis.reduce(v)[0].is_zero()), None
            )
        else:
            bad = kernel_gens[0] if kernel_gens else None
        if bad is not None:
            witness = (i, bad)
            break
        acyclic_up_to = i
    # cokernel: the columns of the first initial matrix generate the initial submodule
    if res.module.is_free:
        coker = True
    else:
        init = submodule_initial(res.module)
        first_cols = [v for v in mats[0].columns if v] if mats else []
        if first_cols:
            b1 = standard_basis(first_cols, GREVLEX, mats[0].target, modulus=A.ideal_sb)
            coker = all(b1.reduce(v)[0].is_zero() for v in init.generators)
        else:
            coker = not init.generators
        # the reverse containment is a theorem; violation is a bug
        bfull = standard_basis(init.generators, GREVLEX, res.module.layout, modulus=A.ideal_sb)
        if not all(bfull.reduce(v)[0].is_zero() for v in first_cols):
            raise BridgeError("initial matrix columns escape the initial submodule")
    minimal = all(
        not A.is_unit(m.entry(r, c))
        for m in mats
        for r in range(m.target.rank)
        for c in range(m.source.rank)
    )
    fully = res.finite and maxpos >= n and witness is None
    if witness is not None or not coker or not minimal:
        conclusion = NOT_PURE
    elif fully:
        conclusion = PURE
    else:
        conclusion = INCONCLUSIVE
    noteworthy = (witness is None and maxpos > 0) and not coker
    return InitialComplexVerdict(
        True, acyclic_up_to, witness, coker, minimal, conclusion,
        maxpos, fully, noteworthy,
    )


@dataclass
class PurityVerdict:
    verdict: str
    route_a: PurityReport
    route_b: InitialComplexVerdict
    betti_transfer: dict = field(default_factory=dict)
    delta: tuple = ()
    cutoff: int = 0
    noteworthy: bool = False

    @property
    def conclusive(self):
        return self.verdict != INCONCLUSIVE


def purity_verdict(mpres: LocalModule, cutoff: int) -> PurityVerdict:
    """Theorem-grade purity decision with mandatory route agreement."""
    res = local_minimal_resolution(mpres, cutoff + 1)
    fs = initial_complex(res)
    route_b = verify_initial_complex(fs, cutoff)
    gm = assoc_graded_module(mpres)
    _, table = minimal_graded_resolution(gm, cutoff)
    route_a = betti_analysis(table)
    if route_a.is_pure:
        a_verdict = PURE if route_a.complete else INCONCLUSIVE
    else:
        a_verdict = NOT_PURE
    b_verdict = route_b.purity_conclusion
    if PURE in (a_verdict, b_verdict) and NOT_PURE in (a_verdict, b_verdict):
        raise BridgeError("purity routes disagree: graded table vs initial complex")
    if a_verdict == b_verdict == INCONCLUSIVE:
        verdict = INCONCLUSIVE
    elif a_verdict != INCONCLUSIVE:
        verdict = a_verdict
    else:
        verdict = b_verdict
    transfer = {}
    if verdict == PURE:
        delta = fs.delta
        for i, br in enumerate(res.ranks):
            a_count = table.entries.get((i, delta[i]), 0)
            transfer[i] = (br, a_count)
            if br != a_count:
                raise BridgeError("Betti transfer failed on a pure module")
            if table.degrees(i) != ([delta[i]] if br else []):
                raise BridgeError("pure degree placement differs from delta")
    return PurityVerdict(
        verdict, route_a, route_b, transfer, fs.delta, cutoff,
        noteworthy=route_b.acyclic_without_coker_match,
    )


# ------------------------------------------------------ filtration checks


def syzygy_filtration_check(mpres: LocalModule, i: int, j_range=None,
                            truncation: int = 12, regbound: int = 10):
    """Per-degree check of (i-th syzygy) | m^j F = m^{j - s_i} (i-th syzygy).

    Subspace comparison in the truncation oracle, stability-checked at
    t and t+1.  The j = s_i row holds by definition.  When ``j_range`` is
    omitted it defaults to s_i <= j <= regbound + i - delta_{i-1}, the
    window that suffices under a regularity bound of ``regbound``.
    """
    if i < 1:
        raise ValueError("homological index must be >= 1")
    res = local_minimal_resolution(mpres, i)
    if len(res.mats) < i:
        return {}
    mat = res.mats[i - 1]
    gens = mat.columns
    s_i = min(mpres.ring.vector_order(v) for v in gens)
    if j_range is None:
        j_range = range(s_i, regbound + i - res.delta[i - 1] + 1)
    out = {}
    for j in j_range:
        if j < s_i:
            raise ValueError("j below the syzygy order")
        answers = []
        for t in (truncation, truncation + 1):
            model = oracle.FreeModel(mpres.ring, mat.target.rank, t)
            inter = oracle.filtration_intersection(model, gens, j)
            power = model.submodule(gens, min_mult_deg=j - s_i)
            answers.append(inter.rank == power.rank)
        if answers[0] != answers[1]:
            raise oracle.OracleWindowError("filtration answer unstable under t -> t+1")
        out[j] = answers[0]
    return out


# ----------------------------------------------------------- fibre products


def fiber_product(r1: LocalRing, r2: LocalRing) -> LocalRing:
    """Fibre product over the residue field: union of variables, both ideals,
    and all mixed products of variables from the two sides.

    The tangent cone of the result is asserted to be the fibre product of
    the tangent cones.
    """
    if r1.cover.field != r2.cover.field:
        raise ValueError("fibre product needs a common coefficient field")
    names1 = list(r1.cover.names)
    names2 = []
    taken = set(names1)
    for nm in r2.cover.names:
        new = nm
        while new in taken:
            new = new + "'"
        names2.append(new)
        taken.add(new)
    cover = PolyRing(names1 + names2, r1.cover.field)
    n1, n2 = len(names1), len(names2)

    def embed(f: Polynomial, offset: int, side_n: int) -> Polynomial:
        terms = {}
        for e, c in f.terms.items():
            ee = [0] * (n1 + n2)
            for k, x in enumerate(e):
                ee[offset + k] = x
            terms[tuple(ee)] = c
        return Polynomial(cover, terms)

    ideal = [embed(g, 0, n1) for g in r1.ideal] + [embed(g, n1, n2) for g in r2.ideal]
    mixed = []
    for a in range(n1):
        for b in range(n2):
            e = [0] * (n1 + n2)
            e[a] = 1
            e[n1 + b] = 1
            mixed.append(Polynomial(cover, {tuple(e): 1}))
    ring = LocalRing(cover, ideal + mixed, fibre_factors=(r1, r2))
    expected = (
        [embed(g, 0, n1) for g in r1.tangent_cone()]
        + [embed(g, n1, n2) for g in r2.tangent_cone()]
        + mixed
    )
    if not ideals_equal(ring.tangent_cone(), expected):
        raise BridgeError("tangent cone of the fibre product is not the fibre product of tangent cones")
    return ring


@dataclass
class KoszulFibreReport:
    omega2_equigenerated: bool
    omega2_degrees: tuple
    omega2_linear_within_cutoff: bool
    column_orders_ok: dict                  # j > 2 -> every column of phi_j has order 1
    not_pure_certificate: bool
    cutoff: int


def koszul_fibre_check(mpres: LocalModule, cutoff: int, force: bool = False) -> KoszulFibreReport:
    """Necessary conditions for purity over a fibre product of Koszul rings:
    the second graded syzygy must have a linear resolution, and every column
    of phi_j must have order 1 for j > 2.  Either failing certifies
    non-purity without the full pipeline."""
    if mpres.ring.fibre_factors is None and not force:
        raise ValueError("ring was not constructed as a fibre product (pass force=True to override)")
    gm = assoc_graded_module(mpres)
    _, table = minimal_graded_resolution(gm, max(cutoff, 3))
    degs2 = tuple(table.degrees(2))
    equi = len(degs2) <= 1
    linear = equi
    if equi and degs2:
        d2 = degs2[0]
        for i in range(3, table.max_i + 1):
            di = table.degrees(i)
            if di and di != [d2 + (i - 2)]:
                linear = False
                break
    res = local_minimal_resolution(mpres, cutoff)
    orders_ok = {}
    for j in range(3, len(res.mats) + 1):
        orders_ok[j] = all(o == 1 for o in res.column_orders(j))
    certificate = (not linear) or (not all(orders_ok.values()) if orders_ok else False)
    return KoszulFibreReport(equi, degs2, linear, orders_ok, certificate, cutoff)
