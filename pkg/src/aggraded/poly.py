"""Sparse polynomials and free-module elements over a prime field.

Terms are stored as dicts keyed by exponent tuples (polynomials) or by
``(component, exponent-tuple)`` pairs (vectors), with int coefficients in
``[0, p)``.  Values are immutable by convention: every operation builds a
fresh dict.  Orders are supplied per call; a value is not bound to one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .field import PrimeField
from .orders import OrderSpec

# ---------------------------------------------------------------- monomials


def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a, b):
    """Exponent-wise difference a - b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mon_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mon_deg(a):
    return sum(a)


@dataclass(frozen=True)
class Monomial:
    """A monomial with its cached total degree."""

    exponents: tuple
    total_degree: int

    @classmethod
    def of(cls, exponents):
        exponents = tuple(exponents)
        if any(e < 0 for e in exponents):
            raise ValueError("negative exponent")
        return cls(exponents, sum(exponents))

    def __post_init__(self):
        assert self.total_degree == sum(self.exponents)


@dataclass(frozen=True)
class FreeLayout:
    """Rank and per-basis-vector degree twists of a free module."""

    rank: int
    twists: tuple = ()

    def __post_init__(self):
        if not self.twists:
            object.__setattr__(self, "twists", (0,) * self.rank)
        if len(self.twists) != self.rank:
            raise ValueError("twists length must equal rank")

    def degree_of(self, comp, exps):
        return mon_deg(exps) + self.twists[comp]


# ----------------------------------------------------------------- the ring


class PolyRing:
    """The polynomial cover k[x_1..x_n] with a fixed prime field k."""

    __slots__ = ("names", "field", "nvars", "_zero_mon")

    def __init__(self, names, p_or_field=PrimeField()):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = p_or_field if isinstance(p_or_field, PrimeField) else PrimeField(p_or_field)
        self.nvars = len(self.names)
        self._zero_mon = (0,) * self.nvars

    @property
    def p(self):
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.names == self.names
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; p={self.p})"

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self._zero_mon: 1})

    def const(self, c):
        c %= self.p
        return Polynomial(self, {self._zero_mon: c} if c else {})

    def gen(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def poly(self, terms):
        """Build a polynomial from an {exps: coeff} mapping, reducing mod p."""
        out = {}
        for e, c in terms.items():
            c %= self.p
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def from_string(self, text):
        return _parse_poly(self, text)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\^|\*|\+|-))")


def _parse_poly(ring, text):
    """Parse sums of monomial terms: e.g. ``X*Z - Y^3 + 2*X``."""
    pos, n = 0, len(text)
    tokens = []
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot parse polynomial at ...{text[pos:]!r}")
            break
        tokens.append((m.group(1), m.group(2), m.group(3)))
        pos = m.end()
    terms = {}
    i, nt = 0, len(tokens)
    var_index = {name: k for k, name in enumerate(ring.names)}
    sign = 1
    if nt == 0:
        raise ValueError("empty polynomial")
    while i < nt:
        num, name, op = tokens[i]
        if op == "+":
            sign = 1
            i += 1
            continue
        if op == "-":
            sign = -1
            i += 1
            continue
        # one term: factors joined by '*'
        coeff = sign
        exps = [0] * ring.nvars
        sign = 1
        expect_factor = True
        while i < nt:
            num, name, op = tokens[i]
            if expect_factor:
                if num is not None:
                    coeff *= int(num)
                    i += 1
                elif name is not None:
                    if name not in var_index:
                        raise ValueError(f"unknown variable {name!r}")
                    e = 1
                    i += 1
                    if i < nt and tokens[i][2] == "^":
                        if i + 1 >= nt or tokens[i + 1][0] is None:
                            raise ValueError("exponent expected after '^'")
                        e = int(tokens[i + 1][0])
                        i += 2
                    exps[var_index[name]] += e
                else:
                    raise ValueError(f"unexpected {op!r} in polynomial")
                expect_factor = False
            else:
                if op == "*":
                    expect_factor = True
                    i += 1
                else:
                    break
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return ring.poly(terms)


# ------------------------------------------------------------- polynomials


class Polynomial:
    """A sparse polynomial; ``terms`` maps exponent tuples to nonzero ints."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.__neg__().__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.p
            if not c:
                return self.ring.zero()
            p = self.ring.p
            return Polynomial(self.ring, {e: a * c % p for e, a in self.terms.items()})
        if isinstance(other, Vector):
            return other.__rmul__(self)
        p = self.ring.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mon_mul(e1, e2)
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def constant_term(self):
        return self.terms.get(self.ring._zero_mon, 0)

    def degree(self):
        """Maximal total degree of the support; -1 for zero."""
        return max((mon_deg(e) for e in self.terms), default=-1)

    def order(self):
        """Minimal total degree of the support (the m-adic order in k[x])."""
        if not self.terms:
            raise ValueError("order undefined for zero")
        return min(mon_deg(e) for e in self.terms)

    def initial_form(self):
        nu = self.order()
        return Polynomial(
            self.ring, {e: c for e, c in self.terms.items() if mon_deg(e) == nu}
        )

    def is_homogeneous(self):
        degs = {mon_deg(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self, order: OrderSpec):
        if not self.terms:
            raise ValueError("leading term of zero")
        e = max(self.terms, key=order.mon_key)
        return e, self.terms[e]

    def sorted_terms(self, order: OrderSpec):
        """Terms as (coefficient, exponents), strictly descending."""
        return [(self.terms[e], e) for e in sorted(self.terms, key=order.mon_key, reverse=True)]

    def monic(self, order: OrderSpec):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self * self.ring.field.inv(c)

    def __str__(self):
        return format_poly(self)

    __repr__ = __str__


def format_poly(f, names=None):
    if not f.terms:
        return "0"
    names = names or f.ring.names
    # display order: degree then lexicographic-ish, stable
    keys = sorted(f.terms, key=lambda e: (mon_deg(e), tuple(-x for x in e)))
    parts = []
    for e in keys:
        c = f.terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        body = "*".join(factors)
        # small signed representative for readability
        half = f.ring.p // 2
        cs = c - f.ring.p if c > half else c
        if not body:
            parts.append(f"{cs}")
        elif cs == 1:
            parts.append(body)
        elif cs == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{cs}*{body}")
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


# ------------------------------------------------------------------ vectors


class Vector:
    """An element of a free module; ``terms`` maps (comp, exps) to ints."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring, rank, terms):
        self.ring = ring
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_polys(cls, entries):
        """Column vector from a list of polynomials (one per component)."""
        ring = entries[0].ring
        terms = {}
        for comp, f in enumerate(entries):
            for e, c in f.terms.items():
                terms[(comp, e)] = c
        return cls(ring, len(entries), terms)

    @classmethod
    def unit(cls, ring, rank, comp):
        return cls(ring, rank, {(comp, ring._zero_mon): 1})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and other.ring == self.ring
            and other.rank == self.rank
            and other.terms == self.terms
        )

    def component(self, comp):
        return Polynomial(
            self.ring, {e: c for (k, e), c in self.terms.items() if k == comp}
        )

    def entries(self):
        return [self.component(i) for i in range(self.rank)]

    def __add__(self, other):
        p = self.ring.p
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = (out.get(t, 0) + c) % p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return Vector(self.ring, self.rank, out)

    def __neg__(self):
        p = self.ring.p
        return Vector(self.ring, self.rank, {t: p - c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self.__add__(other.__neg__())

    def __rmul__(self, other):
        """Scalar or polynomial times vector."""
        if isinstance(other, int):
            c = other % self.ring.p
            p = self.ring.p
            if not c:
                return Vector(self.ring, self.rank, {})
            return Vector(self.ring, self.rank, {t: a * c % p for t, a in self.terms.items()})
        p = self.ring.p
        out = {}
        for e1, c1 in other.terms.items():
            for (k, e2), c2 in self.terms.items():
                t = (k, mon_mul(e1, e2))
                v = (out.get(t, 0) + c1 * c2) % p
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return Vector(self.ring, self.rank, out)

    __mul__ = __rmul__

    def order(self):
        """Minimal total degree over the support (zero twists)."""
        if not self.terms:
            raise ValueError("order undefined for zero")
        return min(mon_deg(e) for (_, e) in self.terms)

    def initial_form(self):
        nu = self.order()
        return Vector(
            self.ring,
            self.rank,
            {t: c for t, c in self.terms.items() if mon_deg(t[1]) == nu},
        )

    def leading_term(self, order: OrderSpec, shifts=None):
        if not self.terms:
            raise ValueError("leading term of zero")
        t = max(self.terms, key=lambda t: order.term_key(t[0], t[1], shifts))
        return t, self.terms[t]

    def sorted_terms(self, order: OrderSpec, shifts=None):
        return [
            (self.terms[t], t)
            for t in sorted(
                self.terms,
                key=lambda t: order.term_key(t[0], t[1], shifts),
                reverse=True,
            )
        ]

    def monic(self, order: OrderSpec, shifts=None):
        if not self.terms:
            return self
        _, c = self.leading_term(order, shifts)
        return self * self.ring.field.inv(c)

    def degree_in(self, layout: FreeLayout):
        """Homogeneous degree with respect to layout twists; raises if mixed."""
        degs = {layout.degree_of(c, e) for (c, e) in self.terms}
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous for this layout")
        return degs.pop() if degs else None

    def is_homogeneous(self, layout: FreeLayout):
        return len({layout.degree_of(c, e) for (c, e) in self.terms}) <= 1

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.entries()) + "]"

    __repr__ = __str__


def order_and_initial_form(x):
    """The pair (minimal support degree, sum of minimal-degree terms).

    Works for a Polynomial or a Vector over a zero-twist layout; raises on
    zero input.
    """
    if x.is_zero():
        raise ValueError("order undefined for zero")
    return x.order(), x.initial_form()
