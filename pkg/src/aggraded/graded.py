"""Graded analysis: resolutions, Betti tables, Hilbert series, invariants.

Hilbert series, dimension and depth are computed through the polynomial
cover S (always a finite resolution there, by Hilbert's syzygy theorem):
H = sum_i (-1)^i sum_j beta_{i,j} z^j / (1-z)^n, cancelled to lowest terms;
depth = n - pdim_S by Auslander-Buchsbaum.  Projective dimension over the
quotient ring itself may be infinite and is only ever reported with its
cutoff status.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import FINITE, FreeComplex, resolve_bounded
from .poly import FreeLayout, Polynomial, Vector
from .rings import GradedRing

PDIM_FINITE = "finite"
PDIM_AT_LEAST = "at_least"


# --------------------------------------------------- small Z[z] helpers


def zpoly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def zpoly_scale(a, c):
    return [c * x for x in a]


def zpoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def zpoly_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def zpoly_div_one_minus_z(a):
    """Exact quotient a / (1 - z); caller guarantees a(1) = 0."""
    if not a:
        return []
    out = [0] * (len(a) - 1)
    acc = 0
    for i in range(len(a) - 1):
        acc += a[i]
        out[i] = acc
    return out


# ------------------------------------------------------------ Betti data


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} up to a homological cutoff."""

    entries: dict                 # (i, j) -> positive count
    cutoff: int
    complete: bool                # True when pdim < cutoff is certified
    pdim: int = -1                # valid when complete

    @property
    def max_i(self):
        return max((i for (i, _) in self.entries), default=0)

    def total(self, i):
        return sum(c for (k, _), c in self.entries.items() if k == i)

    def degrees(self, i):
        return sorted(j for (k, j) in self.entries if k == i)

    def totals(self):
        return [self.total(i) for i in range(self.max_i + 1)]

    def render(self):
        """Rows j - i, columns i, right-aligned counts, '.' for zero."""
        if not self.entries:
            return "(zero module)"
        imax = self.max_i
        slants = [j - i for (i, j) in self.entries]
        lo, hi = min(slants), max(slants)
        width = max(len(str(c)) for c in self.entries.values())
        width = max(width, len(str(imax)), 1)
        head = " " * (len(str(hi)) + 2) + " ".join(f"{i:>{width}}" for i in range(imax + 1))
        lines = [head]
        for s in range(lo, hi + 1):
            cells = []
            for i in range(imax + 1):
                c = self.entries.get((i, s + i), 0)
                cells.append(f"{c if c else '.':>{width}}")
            lines.append(f"{s:>{len(str(hi))}}: " + " ".join(cells))
        return "\n".join(lines)


@dataclass
class PurityReport:
    is_pure: bool
    delta: tuple                     # degree type, when pure (known range)
    is_linear: bool
    regularity_within_cutoff: int
    witness: tuple = None            # (i, (degrees...)) when not pure
    complete: bool = False           # resolution finished below cutoff


@dataclass
class HilbertSeries:
    """H(z) = z^offset * numerator(z) / (1-z)^dim, fully cancelled."""

    numerator: tuple
    dim: int
    offset: int = 0

    @property
    def is_zero(self):
        return not self.numerator

    @property
    def multiplicity(self):
        return sum(self.numerator)

    def series(self, upto):
        """Coefficients of the power-series expansion in degrees 0..upto."""
        out = [0] * (upto + 1)
        if self.is_zero:
            return out
        from math import comb

        for k, c in enumerate(self.numerator):
            if not c:
                continue
            base = k + self.offset
            for m in range(upto + 1 - base):
                out[base + m] += c * (comb(self.dim - 1 + m, m) if self.dim > 0 else (1 if m == 0 else 0))
        return out

    def render(self):
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.numerator):
            if not c:
                continue
            e = k + self.offset
            if e == 0:
                parts.append(f"{c}")
            else:
                z = "z" if e == 1 else f"z^{e}"
                parts.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        num = parts[0] + "".join(f" + {p}" if not p.startswith("-") else f" - {p[1:]}" for p in parts[1:])
        if self.dim == 0:
            return num
        den = "(1-z)" if self.dim == 1 else f"(1-z)^{self.dim}"
        return f"({num})/{den}"


@dataclass
class NumericInvariants:
    dim: int
    depth: int
    codim: int
    cmd: int
    multiplicity: int
    pdim_status: tuple               # (PDIM_FINITE, p) or (PDIM_AT_LEAST, cutoff+1)


@dataclass
class PoincareSeries:
    coefficients: tuple
    closed_form: str = None


# ------------------------------------------------------------ the module


class GradedModule:
    """coker of homogeneous relation columns in a twisted free module."""

    def __init__(self, ring: GradedRing, layout: FreeLayout, relations, minimal=True):
        self.ring = ring
        self.layout = layout
        cleaned = []
        for v in relations:
            if isinstance(v, Polynomial):
                v = Vector.from_polys([v])
            v = ring.nf_vector(v)
            if v.is_zero():
                continue
            if not v.is_homogeneous(layout):
                raise ValueError("relations must be homogeneous for the layout")
            if minimal and any(ring.is_unit(v.component(c)) for c in range(layout.rank)):
                raise ValueError("minimal presentation needs relations inside the irrelevant ideal")
            cleaned.append(v)
        self.relations = cleaned
        self.minimal = minimal
        self._cache = {}

    @property
    def is_zero(self):
        return self.layout.rank == 0

    def __repr__(self):
        return f"GradedModule(rank {self.layout.rank} / {len(self.relations)} relations)"


def minimal_graded_resolution(gmod: GradedModule, cutoff: int):
    """(complex, BettiTable) of a minimal resolution over the quotient ring."""
    cached = gmod._cache.get("res")
    if cached is not None and (cached.status == FINITE or cached.cutoff >= cutoff):
        if cached.status == FINITE and cached.pdim <= cutoff:
            raw = cached
        else:
            raw = type(cached)(cached.mats[:cutoff], "truncated", -1, cutoff)
    else:
        raw = resolve_bounded(gmod.relations, gmod.layout, gmod.ring, cutoff, graded=True)
        if cached is None or (raw.cutoff > cached.cutoff and cached.status != FINITE):
            gmod._cache["res"] = raw
    entries = {}
    for j in gmod.layout.twists:
        entries[(0, j)] = entries.get((0, j), 0) + 1
    for i, m in enumerate(raw.mats, start=1):
        for j in m.source.twists:
            entries[(i, j)] = entries.get((i, j), 0) + 1
    complete = raw.status == FINITE
    table = BettiTable(entries, cutoff, complete, raw.pdim if complete else -1)
    layouts = [gmod.layout] + [m.source for m in raw.mats]
    cx = FreeComplex(layouts, raw.mats)
    return cx, table


def betti_analysis(table: BettiTable) -> PurityReport:
    """Purity / linearity / regularity classification of a Betti table."""
    if not table.entries:
        return PurityReport(True, (), True, 0, None, True)
    witness = None
    delta = []
    for i in range(table.max_i + 1):
        degs = table.degrees(i)
        if len(degs) > 1 and witness is None:
            witness = (i, tuple(degs))
        delta.append(degs[0] if len(degs) == 1 else None)
    pure = witness is None
    reg = max(j - i for (i, j) in table.entries)
    linear = pure and all(d == delta[0] + i for i, d in enumerate(delta) if d is not None)
    return PurityReport(
        pure, tuple(delta) if pure else (), linear, reg, witness, table.complete
    )


# ------------------------------------------------------- Hilbert / numbers


def _presentation_over_cover(gmod: GradedModule):
    """The same module presented over the polynomial cover S."""
    ring = gmod.ring
    S = ring.polynomial_cover
    if ring is S or not ring.ideal:
        return GradedModule(S, gmod.layout, gmod.relations, minimal=gmod.minimal)
    rels = list(gmod.relations)
    cover = ring.cover
    for g in ring.ideal:
        for c in range(gmod.layout.rank):
            rels.append(Vector(cover, gmod.layout.rank, {(c, e): a for e, a in g.terms.items()}))
    return GradedModule(S, gmod.layout, rels, minimal=gmod.minimal)


def resolution_over_cover(gmod: GradedModule):
    if "cover_res" not in gmod._cache:
        sm = _presentation_over_cover(gmod)
        n = gmod.ring.nvars
        raw = resolve_bounded(sm.relations, sm.layout, sm.ring, n + 1, graded=True)
        if raw.status != FINITE:
            raise RuntimeError("resolution over the polynomial cover must be finite")
        gmod._cache["cover_res"] = raw
    return gmod._cache["cover_res"]


def hilbert_series(gmod: GradedModule) -> HilbertSeries:
    """Cancelled Hilbert series via a finite resolution over the cover."""
    if "hilbert" in gmod._cache:
        return gmod._cache["hilbert"]
    n = gmod.ring.nvars
    if gmod.is_zero:
        hs = HilbertSeries((), -1)
        gmod._cache["hilbert"] = hs
        return hs
    raw = resolution_over_cover(gmod)
    twist_lists = [list(gmod.layout.twists)] + [list(m.source.twists) for m in raw.mats]
    shift = min(min(tw) for tw in twist_lists if tw)
    numer = []
    for i, tw in enumerate(twist_lists):
        contrib = [0] * (max(tw) - shift + 1) if tw else []
        for j in tw:
            contrib[j - shift] += (-1) ** i
        numer = zpoly_add(numer, contrib)
    numer = zpoly_trim(numer)
    d = n
    while numer and sum(numer) == 0:
        numer = zpoly_trim(zpoly_div_one_minus_z(numer))
        d -= 1
    if not numer:
        hs = HilbertSeries((), -1)
    else:
        if sum(numer) <= 0:
            raise RuntimeError("Hilbert numerator must be positive at z=1 for a nonzero module")
        hs = HilbertSeries(tuple(numer), d, shift)
    gmod._cache["hilbert"] = hs
    return hs


def pdim_over_cover(gmod: GradedModule) -> int:
    return len(resolution_over_cover(gmod).mats)


def ring_as_module(gring: GradedRing) -> GradedModule:
    key = "self_module"
    if key not in gring.cache:
        gring.cache[key] = GradedModule(gring, FreeLayout(1), [])
    return gring.cache[key]


def numeric_invariants(gmod: GradedModule, cutoff: int = 8) -> NumericInvariants:
    """dim / depth / codim / cmd / multiplicity, plus pdim status over the ring."""
    hs = hilbert_series(gmod)
    ring_hs = hilbert_series(ring_as_module(gmod.ring))
    if gmod.is_zero:
        return NumericInvariants(-1, -1, 0, 0, 0, (PDIM_FINITE, 0))
    n = gmod.ring.nvars
    depth = n - pdim_over_cover(gmod)
    dim = hs.dim
    cmd = dim - depth
    codim = ring_hs.dim - dim
    if not gmod.relations:
        status = (PDIM_FINITE, 0)
    else:
        _, table = minimal_graded_resolution(gmod, cutoff)
        if table.complete:
            status = (PDIM_FINITE, table.pdim)
        else:
            status = (PDIM_AT_LEAST, cutoff + 1)
    assert cmd >= 0 and depth <= dim
    return NumericInvariants(dim, depth, codim, cmd, hs.multiplicity, status)


def poincare_from_hilbert(gmod: GradedModule, cutoff: int) -> PoincareSeries:
    """Total Betti numbers extracted from H_M(z) = z^d0 H_A(z) P(-z).

    Requires a linear resolution up to the cutoff; the extracted
    coefficients are checked against the directly computed Betti numbers.
    """
    _, table = minimal_graded_resolution(gmod, cutoff)
    rep = betti_analysis(table)
    if not (rep.is_pure and rep.is_linear):
        raise ValueError("module does not have a linear resolution within the cutoff")
    d0 = rep.delta[0] if rep.delta else 0
    hm = hilbert_series(gmod)
    ha = hilbert_series(ring_as_module(gmod.ring))
    upto = cutoff + max(d0, 0) + 1
    sm = hm.series(upto)
    sa = ha.series(upto)
    # Q(z) = P(-z) = H_M(z) / (z^d0 H_A(z)): divide series exactly
    shifted = sm[d0:] + [0] * d0
    q = [Fraction(0)] * (cutoff + 1)
    rem = [Fraction(x) for x in shifted]
    for k in range(cutoff + 1):
        q[k] = rem[k] / sa[0]
        for m in range(k, min(len(rem), k + len(sa))):
            rem[m] -= q[k] * sa[m - k]
    coeffs = []
    for i in range(cutoff + 1):
        val = q[i] * (-1) ** i
        if val.denominator != 1 or val < 0:
            raise RuntimeError("Poincare extraction produced a non-Betti coefficient")
        coeffs.append(int(val))
    known = min(table.max_i, cutoff) if table.entries else -1
    for i in range(known + 1):
        if coeffs[i] != table.total(i):
            raise RuntimeError("Poincare coefficients disagree with computed Betti numbers")
    if table.complete:
        coeffs = coeffs[: table.pdim + 1] + [0] * (cutoff - table.pdim)
    closed = f"H_M(-z) / ((-z)^{d0} * H_A(-z))" if d0 else "H_M(-z) / H_A(-z)"
    return PoincareSeries(tuple(coeffs), closed)
