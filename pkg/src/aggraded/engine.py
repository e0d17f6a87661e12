"""Standard bases, weak normal forms and syzygies.

One engine serves both flavors: Buchberger's algorithm under global orders,
Mora's ecart-based variant under local ones.  Computations over a quotient
ring P/I are performed at the polynomial level by adjoining the columns
``g*e_c`` for ``g`` in a certified basis of I; pairs inside that block are
skipped (their s-vectors reduce to zero by the certificate).

Syzygies are computed by the block-elimination construction: each column
``v_j`` is augmented to ``v_j + eps_j`` in ``F (+) R^k`` with the F-block
dominant in the order; basis elements with vanishing F-part have epsilon
parts that generate the syzygy module.

The hot loops work on raw term dicts ``{(comp, exps): coeff}``.
"""

from __future__ import annotations

from .orders import OrderSpec
from .poly import FreeLayout, Polynomial, Vector, mon_deg, mon_div, mon_divides, mon_lcm, mon_mul


class EngineError(RuntimeError):
    pass


MAX_REDUCTION_STEPS = 2_000_000

# ------------------------------------------------------------ term helpers


def _make_keys(order: OrderSpec, shifts, elim_rank=None):
    """Key and weighted-degree functions on terms (comp, exps)."""
    local = order.is_local
    shifts = tuple(shifts)
    trivial = all(s == 0 for s in shifts)

    if trivial:
        def wdeg(t):
            return sum(t[1])
    else:
        def wdeg(t):
            return sum(t[1]) + shifts[t[0]]

    if elim_rank is None:
        def key(t):
            c, e = t
            d = wdeg(t)
            return (-d if local else d, tuple(-x for x in reversed(e)), -c)
    else:
        def key(t):
            c, e = t
            d = wdeg(t)
            return (
                1 if c < elim_rank else 0,
                -d if local else d,
                tuple(-x for x in reversed(e)),
                -c,
            )

    return key, wdeg


def _lt(terms, key):
    return max(terms, key=key)


def _divides(t1, t2):
    return t1[0] == t2[0] and all(x <= y for x, y in zip(t1[1], t2[1]))


def _sub_scaled(h, g_terms, shift, coeff, p):
    """In place: h -= coeff * x^shift * g."""
    for (c, e), a in g_terms.items():
        t = (c, tuple(x + y for x, y in zip(e, shift)))
        v = (h.get(t, 0) - coeff * a) % p
        if v:
            h[t] = v
        else:
            h.pop(t, None)


def _scale(terms, c, p):
    return {t: a * c % p for t, a in terms.items()}


class _Red:
    """A monic reducer with cached lead data."""

    __slots__ = ("terms", "lt", "ecart")

    def __init__(self, terms, key, wdeg):
        self.terms = terms
        self.lt = _lt(terms, key)
        self.ecart = max(wdeg(t) for t in terms) - wdeg(self.lt)


def _weak_nf(h, reducers, key, wdeg, p, mora, tail=False):
    """Reduce dict h against reducers (list of _Red); returns (dict, weak_flag).

    mora=True: Mora weak normal form (intermediates may serve as reducers,
    so the result is valid up to a unit); lead-irreducible remainder, tail
    untouched.  mora=False: classical division with remainder; with tail=True
    the remainder's tail is fully reduced as well.
    """
    inter = []
    weak = False
    rem = {}
    steps = 0
    while h:
        lt = _lt(h, key)
        cands = [r for r in reducers if _divides(r.lt, lt)]
        if mora:
            cands.extend(r for r in inter if _divides(r.lt, lt))
        if not cands:
            if mora or not tail:
                break
            # move the irreducible lead into the remainder, keep reducing
            rem[lt] = h.pop(lt)
            continue
        best = min(cands, key=lambda r: r.ecart)
        if mora:
            h_ecart = max(wdeg(t) for t in h) - wdeg(lt)
            if best.ecart > h_ecart:
                inter.append(_Red(_scale(dict(h), pow(h[lt], -1, p), p), key, wdeg))
                weak = True
        shift = mon_div(lt[1], best.lt[1])
        _sub_scaled(h, best.terms, shift, h[lt], p)
        steps += 1
        if steps > MAX_REDUCTION_STEPS:
            raise EngineError("reduction step limit exceeded")
    if rem:
        h.update(rem)
    return h, weak


# ------------------------------------------------------------ public types


class StandardBasis:
    """A certified standard basis of a submodule of a free module.

    ``gens`` are monic, lead-interreduced Vectors; they include the quotient
    block when a modulus was supplied, so reduction against the basis is
    reduction in the quotient ring.
    """

    __slots__ = ("ring", "layout", "order", "gens", "certified", "modulus", "_key", "_wdeg", "_reds")

    def __init__(self, ring, layout, order, gens, modulus=None, certified=False):
        self.ring = ring
        self.layout = layout
        self.order = order
        self.gens = gens
        self.modulus = modulus
        self.certified = certified
        self._key, self._wdeg = _make_keys(order, layout.twists)
        self._reds = [_Red(g.terms, self._key, self._wdeg) for g in gens]

    def reduce(self, v):
        """Weak normal form of v; returns (remainder, weak_flag)."""
        h = dict(v.terms)
        h, weak = _weak_nf(
            h, self._reds, self._key, self._wdeg, self.ring.p,
            mora=self.order.is_local, tail=not self.order.is_local,
        )
        return Vector(self.ring, self.layout.rank, h), weak

    def contains(self, v):
        rem, _ = self.reduce(v)
        return rem.is_zero()

    def leading_terms(self):
        return [r.lt for r in self._reds]

    def verify_certificate(self):
        """Re-reduce every s-vector to zero; returns True or raises."""
        p = self.ring.p
        for i, a in enumerate(self._reds):
            for j in range(i):
                b = self._reds[j]
                if a.lt[0] != b.lt[0]:
                    continue
                L = mon_lcm(a.lt[1], b.lt[1])
                h = {}
                _sub_scaled(h, a.terms, mon_div(L, a.lt[1]), p - 1, p)
                _sub_scaled(h, b.terms, mon_div(L, b.lt[1]), 1, p)
                if not h:
                    continue
                h, _ = _weak_nf(h, self._reds, self._key, self._wdeg, p,
                                mora=self.order.is_local, tail=False)
                if h:
                    raise EngineError(f"certificate violated by pair ({j}, {i})")
        return True


class NormalFormResult:
    __slots__ = ("remainder", "is_weak")

    def __init__(self, remainder, is_weak):
        self.remainder = remainder
        self.is_weak = is_weak


def normal_form(v, basis: StandardBasis) -> NormalFormResult:
    """Normal form of a Vector or Polynomial against a certified basis.

    Global flavor: honest remainder.  Local flavor: Mora weak normal form,
    valid up to a unit multiplier; flagged via ``is_weak``.
    """
    wrapped = False
    if isinstance(v, Polynomial):
        v = Vector.from_polys([v])
        wrapped = True
    rem, weak = basis.reduce(v)
    if wrapped:
        rem = rem.component(0)
    return NormalFormResult(rem, weak and basis.order.is_local)


# ----------------------------------------------------------- the algorithm


def _as_vectors(gens):
    out = []
    for g in gens:
        if isinstance(g, Polynomial):
            g = Vector.from_polys([g])
        out.append(g)
    return out


def _quotient_columns(modulus, ring, rank, elim_pad=0):
    cols = []
    if modulus:
        for g in modulus:
            for c in range(rank):
                terms = {(c, e): a for e, a in g.terms.items()}
                cols.append(Vector(ring, rank + elim_pad, terms))
    return cols


def _pair_sugar(sug_i, red_i, sug_j, red_j, lcm_exps):
    di = sug_i + mon_deg(lcm_exps) - mon_deg(red_i.lt[1])
    dj = sug_j + mon_deg(lcm_exps) - mon_deg(red_j.lt[1])
    return max(di, dj)


def _buchberger(ring, rank, order, key, wdeg, seed, n_frozen):
    """Core loop.  seed: list of Vector-term dicts; the first n_frozen are
    pairwise certified (their mutual pairs are skipped).  Returns list of
    monic term dicts forming a standard basis (not yet interreduced)."""
    p = ring.p
    mora = order.is_local
    reds = []
    sugars = []
    pairs = {}

    def add_pairs(new):
        lt_new = reds[new].lt
        # Gebauer-Moeller: prune existing pairs strictly dominated by lt_new
        for (i, j) in list(pairs):
            L = pairs[(i, j)][1]
            if (
                reds[i].lt[0] == lt_new[0]
                and mon_divides(lt_new[1], L)
                and mon_lcm(reds[i].lt[1], lt_new[1]) != L
                and mon_lcm(reds[j].lt[1], lt_new[1]) != L
            ):
                del pairs[(i, j)]
        # candidate pairs with the new element, grouped by lcm
        cand = {}
        for i in range(new):
            if reds[i].lt[0] != lt_new[0]:
                continue
            L = mon_lcm(reds[i].lt[1], lt_new[1])
            cand.setdefault(L, []).append(i)
        # keep only divisibility-minimal lcms, one representative per lcm
        kept = []
        for L in sorted(cand, key=lambda e: (mon_deg(e), e)):
            if not any(mon_divides(K, L) for K in kept):
                kept.append(L)
        for L in kept:
            members = cand[L]
            # certified groups: product criterion (ideal case, global order),
            # and pairs inside the frozen quotient block
            if not mora and rank == 1 and any(
                mon_mul(reds[i].lt[1], lt_new[1]) == L for i in members
            ):
                continue
            if new < n_frozen and any(i < n_frozen for i in members):
                continue
            i = min(members)
            sug = _pair_sugar(sugars[i], reds[i], sugars[new], reds[new], L)
            pairs[(i, new)] = (sug, L)

    def append(terms, sugar):
        idx = len(reds)
        reds.append(_Red(terms, key, wdeg))
        sugars.append(sugar)
        add_pairs(idx)

    for terms in seed:
        lt = _lt(terms, key)
        append(_scale(terms, pow(terms[lt], -1, p), p), max(wdeg(t) for t in terms))

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij][0], ij))
        sug, L = pairs.pop((i, j))
        if i < n_frozen and j < n_frozen:
            continue
        # s-vector of monic reducers i and j
        h = {}
        _sub_scaled(h, reds[i].terms, mon_div(L, reds[i].lt[1]), p - 1, p)
        _sub_scaled(h, reds[j].terms, mon_div(L, reds[j].lt[1]), 1, p)
        if not h:
            continue
        h, _ = _weak_nf(h, reds, key, wdeg, p, mora=mora, tail=False)
        if h:
            lt = _lt(h, key)
            append(_scale(h, pow(h[lt], -1, p), p), sug)

    return [dict(r.terms) for r in reds]


def _interreduce(dicts, key, wdeg, p, mora):
    """Drop lead-dominated elements; tail-reduce under global orders."""
    order_idx = sorted(range(len(dicts)), key=lambda i: key(_lt(dicts[i], key)))
    kept = []
    for i in order_idx:
        lt = _lt(dicts[i], key)
        if any(_divides(_lt(k, key), lt) for k in kept):
            continue
        kept.append(dicts[i])
    if not mora:
        out = []
        for i, d in enumerate(kept):
            others = [_Red(k, key, wdeg) for j, k in enumerate(kept) if j != i]
            h, _ = _weak_nf(dict(d), others, key, wdeg, p, mora=False, tail=True)
            lt = _lt(h, key)
            out.append(_scale(h, pow(h[lt], -1, p), p))
        kept = out
    return kept


def standard_basis(gens, order: OrderSpec, layout: FreeLayout = None, modulus=None):
    """Certified standard basis of the submodule generated by ``gens``.

    ``modulus``: a certified basis (list of Polynomials or a StandardBasis)
    of the defining ideal; computation then happens over the quotient ring.
    """
    gens = _as_vectors([g for g in gens if g])
    if isinstance(modulus, StandardBasis):
        modulus = [g.component(0) for g in modulus.gens]
    if not gens and not modulus:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring if gens else modulus[0].ring
    if layout is None:
        rank = gens[0].rank if gens else 1
        layout = FreeLayout(rank)
    key, wdeg = _make_keys(order, layout.twists)
    qcols = _quotient_columns(modulus, ring, layout.rank)
    seed = [dict(v.terms) for v in qcols] + [dict(v.terms) for v in gens]
    dicts = _buchberger(ring, layout.rank, order, key, wdeg, seed, n_frozen=len(qcols))
    dicts = _interreduce(dicts, key, wdeg, ring.p, order.is_local)
    vecs = [Vector(ring, layout.rank, d) for d in dicts]
    return StandardBasis(ring, layout, order, vecs, modulus=modulus, certified=True)


class SyzygyMatrix:
    """Columns generating the syzygy module of a list of target columns."""

    __slots__ = ("columns", "target")

    def __init__(self, columns, target):
        self.columns = columns
        self.target = target

    def check_annihilates(self, modulus=None):
        """Exact symbolic check: target-matrix times each column is zero
        (modulo the defining ideal, when a certified ``modulus`` is given)."""
        tgt = self.target
        for col in self.columns:
            acc = None
            for j, v in enumerate(tgt):
                w = col.component(j) * v
                acc = w if acc is None else acc + w
            if acc is None or acc.is_zero():
                continue
            if not isinstance(modulus, StandardBasis):
                return False
            if not modulus.contains(acc):
                return False
        return True


def syzygies(cols, order: OrderSpec, layout: FreeLayout = None, modulus=None):
    """Generators of the syzygy module of ``cols`` over the (quotient) ring.

    Zero columns are allowed; they contribute unit syzygies.
    """
    cols = _as_vectors(cols)
    if not cols:
        return SyzygyMatrix([], [])
    ring = cols[0].ring
    if layout is None:
        layout = FreeLayout(cols[0].rank)
    if isinstance(modulus, StandardBasis):
        modulus = [g.component(0) for g in modulus.gens]
    l, k = layout.rank, len(cols)
    eps_shifts = []
    fkey, fwdeg = _make_keys(order, layout.twists)
    for v in cols:
        eps_shifts.append(fwdeg(_lt(v.terms, fkey)) if v.terms else 0)
    shifts = tuple(layout.twists) + tuple(eps_shifts)
    key, wdeg = _make_keys(order, shifts, elim_rank=l)
    qcols = _quotient_columns(modulus, ring, l, elim_pad=k)
    seed = [dict(v.terms) for v in qcols]
    zm = ring._zero_mon
    for j, v in enumerate(cols):
        d = dict(v.terms)
        d[(l + j, zm)] = 1
        seed.append(d)
    dicts = _buchberger(ring, l + k, order, key, wdeg, seed, n_frozen=len(qcols))
    out = []
    for d in dicts:
        if any(c < l for (c, _) in d):
            continue
        out.append(Vector(ring, k, {(c - l, e): a for (c, e), a in d.items()}))
    out.sort(key=lambda v: sorted(v.terms))
    return SyzygyMatrix(out, cols)
