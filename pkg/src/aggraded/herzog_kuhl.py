"""Herzog-Kuhl coefficients and the finite-projective-dimension theorems.

All identities here are exact: coefficients are Fractions, multiplicities
integers.  The three-way equivalences are asserted, not merely reported; a
violation on an input passing the preconditions is a build-failing bug.

Local depths are routed through Auslander-Buchsbaum: depth(R) is n minus
the projective dimension of R over the localized polynomial cover, and
depth(M) = depth(R) - pdim_R(M) whenever the latter is finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .graded import hilbert_series, numeric_invariants, ring_as_module
from .modules import (BridgeError, LocalModule, assoc_graded_module,
                      local_minimal_resolution)
from .poly import FreeLayout
from .purity import NOT_PURE, PURE, purity_verdict, verify_initial_complex, initial_complex
from .rings import LocalRing


class PreconditionError(ValueError):
    """The theorem's hypotheses fail on this input (not a verdict)."""


@dataclass
class HKCoefficients:
    b: tuple                 # b_1..b_p, exact positive rationals
    delta: tuple             # (0, delta_1, ..., delta_p) strictly increasing


def hk_coefficients(delta) -> HKCoefficients:
    """b_i = (-1)^(i-1) prod_{j != i} delta_j / (delta_j - delta_i)."""
    delta = tuple(delta)
    if len(delta) < 2 or delta[0] != 0:
        raise ValueError("degree type must start at 0 and have p >= 1")
    if any(a >= b for a, b in zip(delta, delta[1:])):
        raise ValueError("degree type must be strictly increasing")
    p = len(delta) - 1
    bs = []
    for i in range(1, p + 1):
        val = Fraction((-1) ** (i - 1))
        for j in range(1, p + 1):
            if j == i:
                continue
            val *= Fraction(delta[j], delta[j] - delta[i])
        if val <= 0:
            raise BridgeError("Herzog-Kuhl coefficient came out nonpositive")
        bs.append(val)
    return HKCoefficients(tuple(bs), delta)


# ------------------------------------------------------- local invariants


def ring_pdim_over_cover(ring: LocalRing) -> int:
    """pdim of R over the localized polynomial cover (finite, <= n)."""
    if "pdim_cover" not in ring.cache:
        if not ring.ideal:
            ring.cache["pdim_cover"] = 0
        else:
            base = LocalRing(ring.cover, ())
            mod = LocalModule(base, FreeLayout(1), list(ring.ideal))
            res = local_minimal_resolution(mod, ring.nvars + 1)
            if not res.finite:
                raise RuntimeError("resolution over a regular cover must be finite")
            ring.cache["pdim_cover"] = res.pdim
    return ring.cache["pdim_cover"]


def ring_local_invariants(ring: LocalRing):
    """(dim R, depth R, cmd R, e R): dimension and multiplicity through the
    associated graded ring, depth through Auslander-Buchsbaum over the cover."""
    if "local_inv" not in ring.cache:
        hs = hilbert_series(ring_as_module(ring.graded_cover))
        depth = ring.nvars - ring_pdim_over_cover(ring)
        ring.cache["local_inv"] = (hs.dim, depth, hs.dim - depth, hs.multiplicity)
    return ring.cache["local_inv"]


def module_local_invariants(mpres: LocalModule, pdim: int):
    """(dim M, depth M, cmd M) for a module of finite projective dimension."""
    gm = assoc_graded_module(mpres)
    dim_m = hilbert_series(gm).dim
    _, depth_r, _, _ = ring_local_invariants(mpres.ring)
    depth_m = depth_r - pdim
    return dim_m, depth_m, dim_m - depth_m


def multiplicity_of_module(mpres: LocalModule) -> int:
    return hilbert_series(assoc_graded_module(mpres)).multiplicity


def _finite_resolution(mpres: LocalModule, cutoff: int):
    res = local_minimal_resolution(mpres, cutoff)
    if not res.finite:
        raise PreconditionError(f"pdim not finite within cutoff {cutoff}")
    return res


# ------------------------------------------------------------ the theorems


@dataclass
class HKReport:
    condition_cmd_module: bool       # cmd(M) = cmd(R)
    condition_betti: bool            # beta_i = b_i * beta_0 for all i
    condition_cmd_graded: bool       # cmd of the graded module = cmd(A)
    cmd_module: int
    cmd_ring: int
    cmd_graded_module: int
    cmd_graded_ring: int
    betti: tuple
    hk: HKCoefficients
    multiplicity_identity_holds: bool
    multiplicity_sides: tuple        # (e(M), e(R) * beta_0 / p! * prod delta_i)


def cmd_equivalence_report(mpres: LocalModule, cutoff: int = 8) -> HKReport:
    """The local Herzog-Kuhl equivalence for a pure module of finite pdim."""
    pv = purity_verdict(mpres, cutoff)
    if pv.verdict == NOT_PURE:
        raise PreconditionError("associated graded module does not have a pure resolution")
    if pv.verdict != PURE:
        raise PreconditionError("purity inconclusive at this cutoff")
    res = _finite_resolution(mpres, cutoff)
    p = res.pdim
    delta = res.delta
    betti = tuple(res.ranks)
    if p == 0:
        raise PreconditionError("free module: the degree type is empty")
    hk = hk_coefficients(delta)
    dim_m, depth_m, cmd_m = module_local_invariants(mpres, p)
    dim_r, depth_r, cmd_r, e_r = ring_local_invariants(mpres.ring)
    gm = assoc_graded_module(mpres)
    inv_gm = numeric_invariants(gm, cutoff)
    inv_a = numeric_invariants(ring_as_module(mpres.ring.graded_cover), cutoff)
    cond1 = cmd_m == cmd_r
    cond2 = all(Fraction(betti[i]) == hk.b[i - 1] * betti[0] for i in range(1, p + 1))
    cond3 = inv_gm.cmd == inv_a.cmd
    if not (cond1 == cond2 == cond3):
        raise BridgeError("Herzog-Kuhl equivalence violated on a pure module")
    e_m = multiplicity_of_module(mpres)
    rhs = Fraction(e_r * betti[0], factorial(p))
    for d in delta[1:]:
        rhs *= d
    identity = Fraction(e_m) == rhs
    if cond1 and not identity:
        raise BridgeError("multiplicity identity fails although the cmd conditions hold")
    return HKReport(
        cond1, cond2, cond3, cmd_m, cmd_r, inv_gm.cmd, inv_a.cmd,
        betti, hk, identity, (e_m, rhs),
    )


@dataclass
class CMPurityReport:
    """Tri-state verdicts (True / False / None=inconclusive) for the three
    equivalent characterizations of 'graded module pure and Cohen-Macaulay'."""

    condition_i: bool | None         # pure + CM graded module
    condition_ii: bool | None        # A CM + acyclic initial complex + HK + multiplicity
    condition_iii: bool | None       # pure + A CM + M CM
    detail: dict


def cm_purity_report(mpres: LocalModule, cutoff: int = 8) -> CMPurityReport:
    res = _finite_resolution(mpres, cutoff)
    p = res.pdim
    pv = purity_verdict(mpres, cutoff)
    gm = assoc_graded_module(mpres)
    inv_gm = numeric_invariants(gm, cutoff)
    inv_a = numeric_invariants(ring_as_module(mpres.ring.graded_cover), cutoff)
    _, _, cmd_m = module_local_invariants(mpres, p)
    a_cm = inv_a.cmd == 0
    m_cm = cmd_m == 0
    gm_cm = inv_gm.cmd == 0

    pure = {PURE: True, NOT_PURE: False}.get(pv.verdict)
    cond_i = None if pure is None and gm_cm else (bool(pure) and gm_cm)
    # (ii): acyclicity of the initial complex is fully decidable (p finite)
    fs = initial_complex(res)
    vr = verify_initial_complex(fs, cutoff)
    acyclic = vr.homology_witness is None and vr.fully_checked if res.finite else None
    if vr.homology_witness is not None:
        acyclic = False
    betti = tuple(res.ranks)
    if p >= 1:
        hk = hk_coefficients(res.delta)
        hk_holds = all(Fraction(betti[i]) == hk.b[i - 1] * betti[0] for i in range(1, p + 1))
        rhs = Fraction(ring_local_invariants(mpres.ring)[3] * betti[0], factorial(p))
        for d in res.delta[1:]:
            rhs *= d
        mult_holds = Fraction(multiplicity_of_module(mpres)) == rhs
    else:
        hk_holds = True
        mult_holds = Fraction(multiplicity_of_module(mpres)) == Fraction(
            ring_local_invariants(mpres.ring)[3] * betti[0]
        )
    cond_ii = None if acyclic is None else (a_cm and acyclic and hk_holds and mult_holds)
    cond_iii = None if pure is None and (a_cm and m_cm) else (bool(pure) and a_cm and m_cm)
    concl = [c for c in (cond_i, cond_ii, cond_iii) if c is not None]
    if len(set(concl)) > 1:
        raise BridgeError("pure+CM equivalent conditions disagree")
    detail = {
        "pure": pv.verdict,
        "graded_module_cm": gm_cm,
        "graded_ring_cm": a_cm,
        "module_cm": m_cm,
        "acyclic": acyclic,
        "hk_equations": hk_holds,
        "multiplicity_identity": mult_holds,
    }
    return CMPurityReport(cond_i, cond_ii, cond_iii, detail)


@dataclass
class FinitePdimReport:
    hypothesis: bool | None          # pdim_R(M) == pdim_A(graded M), None = not verified within cutoff
    pdim_local: int
    pdim_graded: int | None
    codim: int
    codim_le_pdim: bool | None
    module_cm: bool
    ring_cm_verdict: bool | None


def finite_pdim_consequences(mpres: LocalModule, cutoff: int = 8) -> FinitePdimReport:
    """codim(M) <= pdim(M) under matching projective dimensions, and ring
    Cohen-Macaulayness when the module is CM; inconclusive when the graded
    pdim is unresolved within the cutoff."""
    res = _finite_resolution(mpres, cutoff)
    p = res.pdim
    gm = assoc_graded_module(mpres)
    inv_gm = numeric_invariants(gm, cutoff)
    inv_a = numeric_invariants(ring_as_module(mpres.ring.graded_cover), cutoff)
    if inv_gm.pdim_status[0] == "finite":
        pdim_graded = inv_gm.pdim_status[1]
        hypothesis = pdim_graded == p
    else:
        pdim_graded = None
        hypothesis = None
    codim = inv_a.dim - inv_gm.dim
    _, _, cmd_m = module_local_invariants(mpres, p)
    m_cm = cmd_m == 0
    codim_le = None
    ring_cm = None
    if hypothesis:
        codim_le = codim <= p
        if not codim_le:
            raise BridgeError("codim exceeds pdim although the hypothesis holds")
        if m_cm:
            _, _, cmd_r, _ = ring_local_invariants(mpres.ring)
            ring_cm = cmd_r == 0
            if not ring_cm:
                raise BridgeError("CM module of finite pdim over a non-CM ring")
    return FinitePdimReport(hypothesis, p, pdim_graded, codim, codim_le, m_cm, ring_cm)
