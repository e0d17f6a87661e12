import random

from aggraded import oracle
from aggraded.engine import normal_form, standard_basis, syzygies
from aggraded.orders import DS, GREVLEX
from aggraded.poly import FreeLayout, PolyRing, Vector
from aggraded.rings import ideals_equal

R3 = PolyRing(["X", "Y", "Z"], 32003)
EXAMPLE_IDEAL = [
    R3.from_string("X*Z - Y^3"),
    R3.from_string("Y*Z - X^4"),
    R3.from_string("Z^2 - X^3*Y^2"),
]


def test_local_basis_initial_forms_generate_tangent_cone():
    sb = standard_basis(EXAMPLE_IDEAL, DS)
    assert sb.certified
    forms = [g.component(0).initial_form() for g in sb.gens]
    expected = [R3.from_string(s) for s in ("X*Z", "Y*Z", "Z^2", "Y^4")]
    assert ideals_equal(forms, expected)


def test_single_monomial_unchanged():
    P = PolyRing(["x", "y"], 32003)
    for order in (GREVLEX, DS):
        sb = standard_basis([P.gen(0)], order)
        assert [g.component(0) for g in sb.gens] == [P.gen(0)]


def test_interreduction_global():
    P = PolyRing(["x", "y"], 32003)
    sb = standard_basis([P.from_string("x^2 + y"), P.gen(1)], GREVLEX)
    polys = sorted((g.component(0) for g in sb.gens), key=lambda f: f.degree())
    assert polys == [P.gen(1), P.from_string("x^2")]


def test_normal_form_examples():
    sb = standard_basis(EXAMPLE_IDEAL, DS)
    assert normal_form(R3.from_string("X*Z - Y^3"), sb).remainder.is_zero()
    P = PolyRing(["x", "y"], 32003)
    sb_y = standard_basis([P.gen(1)], GREVLEX)
    nf = normal_form(P.gen(0), sb_y)
    assert nf.remainder == P.gen(0) and not nf.is_weak
    cone = standard_basis([R3.from_string(s) for s in ("X*Z", "Y*Z", "Z^2", "Y^4")], GREVLEX)
    assert normal_form(R3.from_string("Y^4"), cone).remainder.is_zero()


def test_weak_flag_is_local_only():
    sb = standard_basis(EXAMPLE_IDEAL, DS)
    res = normal_form(R3.from_string("Y^4"), sb)
    assert not res.remainder.is_zero()  # Y^4 is X^5 in the quotient, not 0


def test_koszul_syzygy():
    P = PolyRing(["x1", "x2"], 32003)
    syz = syzygies([P.gen(0), P.gen(1)], GREVLEX)
    assert len(syz.columns) == 1
    assert syz.check_annihilates()
    col = syz.columns[0]
    a, b = col.component(0), col.component(1)
    assert a * P.gen(0) + b * P.gen(1) == P.zero()


def test_syzygies_of_regular_sequence_squares():
    P = PolyRing(["x1", "x2", "x3"], 32003)
    cols = [P.gen(i) ** 2 for i in range(3)]
    syz = syzygies(cols, GREVLEX)
    assert len(syz.columns) == 3
    assert syz.check_annihilates()
    # Koszul: every syzygy column is quadratic in the entries
    for col in syz.columns:
        for c in range(3):
            f = col.component(c)
            assert f.is_zero() or f.degree() == 2


def test_syzygy_of_x_over_semigroup_ring_is_trivial(semigroup_ring):
    import numpy as np

    # the ring is a domain: the annihilator of X vanishes
    x_col = Vector.from_polys([R3.gen(0)])
    syz = syzygies([x_col], DS, FreeLayout(1), modulus=semigroup_ring.ideal_sb)
    assert syz.check_annihilates(modulus=semigroup_ring.ideal_sb)
    reduced = [semigroup_ring.nf_vector(c) for c in syz.columns]
    assert all(v.is_zero() for v in reduced)
    # oracle brute force, stabilized over t: every kernel vector of the
    # multiplication-by-X map lives entirely above the truncation window
    for t in (8, 9):
        qm = oracle.TruncatedModel(semigroup_ring, 1, [], t)
        xmap = qm.variable_maps[0]
        for vec in _nullspace_modp(xmap, 32003):
            support = [qm.basis[i] for i in np.nonzero(vec)[0]]
            assert support and all(sum(e) >= t - 4 for (_, e) in support)


def _nullspace_modp(M, p):
    import numpy as np

    R, pivots = oracle.rref_modp(M % p, p)
    n = M.shape[1]
    piv_set = set(pivots)
    basis = []
    for free in range(n):
        if free in piv_set:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for row, c in zip(R, pivots):
            v[c] = (-int(row[free])) % p
        basis.append(v)
    return basis


def test_quotient_membership_matches_oracle_randomized(semigroup_ring):
    rng = random.Random(7)
    sb = semigroup_ring.ideal_sb
    model = oracle.TruncatedModel(semigroup_ring, 1, [], 9)
    mons = [m for m in oracle.monomials_below(3, 5)]
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            m = mons[rng.randrange(len(mons))]
            terms[m] = terms.get(m, 0) + rng.randint(-3, 3)
        f = R3.poly(terms)
        engine_zero = normal_form(f, sb).remainder.is_zero()
        oracle_zero = model.contains(Vector.from_polys([f]))
        if engine_zero:
            assert oracle_zero
        elif not oracle_zero:
            pass  # both nonzero: consistent
        else:
            # oracle says zero: the class must sit above the truncation window
            nu = semigroup_ring.order_of(f)[0]
            assert nu >= model.t - 4


def test_syzygies_annihilate_is_symbolic(squares_module):
    res_cols = squares_module.gens
    syz = syzygies(res_cols, DS, squares_module.layout)
    assert syz.check_annihilates()


def test_certificate_reverification(semigroup_ring):
    sb = standard_basis(EXAMPLE_IDEAL, DS)
    assert sb.verify_certificate()
    gb = standard_basis([R3.from_string(s) for s in ("X*Z", "Y*Z", "Z^2", "Y^4")], GREVLEX)
    assert gb.verify_certificate()


def test_engine_determinism():
    runs = []
    for _ in range(2):
        sb = standard_basis(EXAMPLE_IDEAL, DS)
        runs.append([tuple(sorted(g.terms.items())) for g in sb.gens])
        syz = syzygies([R3.gen(0) ** 2, R3.gen(1) ** 2, R3.gen(0) * R3.gen(1)], GREVLEX)
        runs[-1].append([tuple(sorted(c.terms.items())) for c in syz.columns])
    assert runs[0] == runs[1]
