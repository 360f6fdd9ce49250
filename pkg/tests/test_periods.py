from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ellipticlie import periods as P
from ellipticlie.scalars import dim_cusp_forms

a_, b_ = sympy.symbols("a b")


def to_sympy(f):
    return sum(sympy.Rational(c.numerator, c.denominator) * a_**i * b_ ** (f.deg - i) for i, c in enumerate(f.coeffs))


def sympy_act(g, f):
    (p, q), (r, s) = g
    return sympy.expand(to_sympy(f).subs({a_: p * a_ - r * b_, b_: -q * a_ + s * b_}, simultaneous=True))


gens = st.sampled_from([P.S, P.T, ((1, -1), (0, 1)), ((0, 1), (-1, 0))])


def words_to_matrix(ws):
    g = P.I2
    for h in ws:
        g = P.mat_mul2(g, h)
    return g


matrices = st.lists(gens, min_size=1, max_size=5).map(words_to_matrix)
polys = st.integers(0, 12).flatmap(
    lambda d: st.lists(st.integers(-5, 5), min_size=d + 1, max_size=d + 1).map(lambda c: P.SymPower(d, tuple(c)))
)


@given(matrices, matrices, polys)
def test_action_is_left_action(g, h, f):
    assert P.act(P.mat_mul2(g, h), f) == P.act(g, P.act(h, f))


@given(matrices, polys)
def test_action_matches_sympy(g, f):
    assert sympy.expand(to_sympy(P.act(g, f)) - sympy_act(g, f)) == 0


def test_s2_u3_identity_on_even_powers():
    for deg in range(0, 25, 2):
        ident = [[int(i == j) for j in range(deg + 1)] for i in range(deg + 1)]
        assert P.rho(P.mat_mul2(P.S, P.S), deg) == ident
        assert P.rho(P.mat_mul2(P.U, P.U2), deg) == ident


def test_cocycle_dimensions_and_split():
    for deg in range(2, 25, 2):
        Z = P.cuspidal_cocycles(deg)
        plus, minus = P.frobenius_split(Z)
        s = dim_cusp_forms(deg + 2) if deg + 2 >= 4 else 0
        assert (len(Z), len(plus), len(minus)) == (2 * s + 1, s + 1, s)
        assert P.in_space(P.coboundary(deg), plus)
        for v in plus:
            assert v.frobenius() == v and v.frobenius().frobenius() == v
        for v in minus:
            assert v.frobenius() == v * -1


def test_eichler_shimura_cross_check():
    for k in range(12, 27, 2):
        _, minus = P.frobenius_split(P.cuspidal_cocycles(k - 2))
        assert len(minus) == dim_cusp_forms(k)


def test_weight_12_minus_polynomial_exponents():
    _, minus = P.frobenius_split(P.cuspidal_cocycles(10))
    (r,) = minus
    # 4(a^9 b + a b^9) - 25(a^7 b^3 + a^3 b^7) + 42 a^5 b^5 up to scale
    expected = {9: 4, 1: 4, 7: -25, 3: -25, 5: 42}
    lead = r.coeff(9)
    assert all(r.coeff(i) * 4 == lead * expected.get(i, 0) for i in range(11))


def test_weight_12_plus_part():
    plus, _ = P.frobenius_split(P.cuspidal_cocycles(10))
    target = P.SymPower.from_dict(10, {8: 1, 6: -3, 4: 3, 2: -1})
    assert P.in_space(target, plus)


def test_coboundary_cocycle():
    c = P.coboundary_cocycle(10, P.S)
    assert c == P.coboundary(10)
    assert P.coboundary_cocycle(10, P.T).is_zero()


def test_relation_coeffs_parity():
    _, minus = P.frobenius_split(P.cuspidal_cocycles(10))
    fam = P.relation_coeffs(10, 3, minus[0])
    assert sorted(fam) == list(range(7))
    assert fam[0] == 0 and fam[6] == 0
    with pytest.raises(P.ParityError):
        P.relation_coeffs(10, 2, minus[0])


def test_check_sl2_and_errors():
    with pytest.raises(ValueError):
        P.check_sl2(((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        P.cuspidal_cocycles(5)
    with pytest.raises(ValueError):
        P.SymPower(2, (1, 2))


def test_json():
    (r,) = P.frobenius_split(P.cuspidal_cocycles(10))[1]
    j = r.to_json()
    assert j[0]["monomial"] == "a^9 b^1"
    assert Fraction(j[1]["coeff"]) == Fraction(-25, 4) * Fraction(j[0]["coeff"])
