"""Ring presentations: local rings at the origin and standard graded rings.

A local ring is the localization of ``k[x_1..x_n]`` at the origin modulo a
proper ideal I, carried as its generators plus a certified local standard
basis.  Its tangent cone in(I) (initial forms of the certified basis) is a
Groebner basis of the defining ideal of the associated graded ring
``A = k[x]/in(I)``, which is carried as the graded cover.

Power-series rings are represented through polynomial presentations
localized at the origin; no power-series arithmetic exists here.
"""

from __future__ import annotations

from .engine import normal_form, standard_basis
from .orders import DS, GREVLEX, OrderSpec
from .poly import PolyRing, Polynomial, Vector


class UnitIdealError(ValueError):
    pass


class ZeroInQuotientError(ValueError):
    pass


class _QuotientOps:
    """Shared reduction helpers for ring presentations (duck-typed ctx)."""

    @property
    def ideal_sb(self):
        raise NotImplementedError

    def nf(self, f: Polynomial) -> Polynomial:
        sb = self.ideal_sb
        if sb is None:
            return f
        return normal_form(f, sb).remainder

    def nf_vector(self, v: Vector) -> Vector:
        terms = {}
        for comp in range(v.rank):
            f = self.nf(v.component(comp))
            for e, a in f.terms.items():
                terms[(comp, e)] = a
        return Vector(v.ring, v.rank, terms)

    def is_unit(self, f: Polynomial) -> bool:
        # the constant term is well defined modulo a proper ideal
        return f.constant_term() != 0

    def is_zero(self, f: Polynomial) -> bool:
        return self.nf(f).is_zero()


class LocalRing(_QuotientOps):
    """Localization of a polynomial ring at the origin modulo a proper ideal."""

    def __init__(self, cover: PolyRing, ideal=(), fibre_factors=None):
        self.cover = cover
        self.order = DS
        self.ideal = [g for g in ideal if g]
        for g in self.ideal:
            if g.constant_term():
                raise UnitIdealError("defining ideal contains a unit")
        self.fibre_factors = fibre_factors
        self._sb = None
        self._tcone = None
        self._graded_cover = None
        self.cache = {}

    @property
    def nvars(self):
        return self.cover.nvars

    @property
    def characteristic(self):
        return self.cover.p

    @property
    def ideal_sb(self):
        if self._sb is None and self.ideal:
            self._sb = standard_basis(self.ideal, DS)
            for g in self._sb.gens:
                if g.component(0).constant_term():
                    raise UnitIdealError("defining ideal contains a unit")
        return self._sb

    def tangent_cone(self):
        """Generators of in(I), the defining ideal of the associated graded ring.

        Initial forms of the certified local basis; returned inter-reduced as
        a Groebner basis under the global order.
        """
        if self._tcone is None:
            sb = self.ideal_sb
            if sb is None:
                self._tcone = []
            else:
                forms = [g.component(0).initial_form() for g in sb.gens]
                gb = standard_basis(forms, GREVLEX)
                self._tcone = sorted(
                    (g.component(0) for g in gb.gens),
                    key=lambda f: GREVLEX.mon_key(f.leading_term(GREVLEX)[0]),
                )
        return self._tcone

    @property
    def graded_cover(self) -> "GradedRing":
        """A = G_m(R) presented as cover/in(I)."""
        if self._graded_cover is None:
            self._graded_cover = GradedRing(self.cover, self.tangent_cone())
        return self._graded_cover

    def order_of(self, f: Polynomial):
        """(nu, initial form class in A) for a nonzero element of the quotient.

        nu is the total degree of the minimal-degree term of the Mora normal
        form; the initial form is reduced into the graded cover.
        """
        h = self.nf(f)
        if h.is_zero():
            raise ZeroInQuotientError("zero in quotient: order undefined")
        nu = h.order()
        init = self.graded_cover.nf(h.initial_form())
        return nu, init

    def vector_order(self, v: Vector):
        """Minimal entry order of a column over the quotient ring."""
        orders = []
        for comp in range(v.rank):
            f = self.nf(v.component(comp))
            if f:
                orders.append(f.order())
        if not orders:
            raise ZeroInQuotientError("zero column: order undefined")
        return min(orders)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal) or "0"
        return f"LocalRing({','.join(self.cover.names)}; I=<{gens}>; p={self.cover.p})"


class GradedRing(_QuotientOps):
    """Standard graded algebra cover/J with J homogeneous."""

    def __init__(self, cover: PolyRing, ideal=()):
        self.cover = cover
        self.order = GREVLEX
        self.ideal = [g for g in ideal if g]
        for g in self.ideal:
            if not g.is_homogeneous():
                raise ValueError("graded ring needs homogeneous relations")
            if g.constant_term():
                raise UnitIdealError("defining ideal contains a unit")
        self._gb = None
        self.cache = {}

    @property
    def nvars(self):
        return self.cover.nvars

    @property
    def ideal_sb(self):
        if self._gb is None and self.ideal:
            self._gb = standard_basis(self.ideal, GREVLEX)
        return self._gb

    @property
    def polynomial_cover(self) -> "GradedRing":
        """The ambient polynomial ring as a graded ring (J = 0)."""
        key = "poly_cover"
        if key not in self.cache:
            self.cache[key] = self if not self.ideal else GradedRing(self.cover, ())
        return self.cache[key]

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal) or "0"
        return f"GradedRing({','.join(self.cover.names)}; J=<{gens}>; p={self.cover.p})"

    def __eq__(self, other):
        return (
            isinstance(other, GradedRing)
            and other.cover == self.cover
            and other.ideal == self.ideal
        )

    def __hash__(self):
        return hash((self.cover, tuple(frozenset(g.terms.items()) for g in self.ideal)))


def tangent_cone(ideal_gens, ring: PolyRing = None):
    """in(I) for an ideal proper at the origin; accepts gens or a LocalRing."""
    if isinstance(ideal_gens, LocalRing):
        return ideal_gens.tangent_cone()
    ring = ring or ideal_gens[0].ring
    return LocalRing(ring, ideal_gens).tangent_cone()


def ideals_equal(gens_a, gens_b, order: OrderSpec = GREVLEX):
    """Ideal equality by mutual normal forms against certified bases."""
    gens_a = [g for g in gens_a if g]
    gens_b = [g for g in gens_b if g]
    if not gens_a or not gens_b:
        return not gens_a and not gens_b
    sb_a = standard_basis(gens_a, order)
    sb_b = standard_basis(gens_b, order)
    return all(normal_form(g, sb_a).remainder.is_zero() for g in gens_b) and all(
        normal_form(g, sb_b).remainder.is_zero() for g in gens_a
    )
