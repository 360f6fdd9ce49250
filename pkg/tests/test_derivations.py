from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellipticlie.derivations import (
    Derivation,
    EpsilonMismatch,
    _closed_images,
    _solve_partner,
    ad_der_pow,
    commutator,
    epsilon,
    epsilon_check,
    epsilon_std,
    inner,
    is_der0,
    lowered,
    monodromy_log,
    sl2_triple,
    w_pollack,
)
from ellipticlie.freelie import AT, LieElement, bracket, gen, lyndon_words, standard_bracketing, theta
from ellipticlie.scalars import factorial

A, T = gen("A"), gen("T")


def test_epsilon_annihilates_theta():
    for n in range(11):
        assert is_der0(epsilon_std(2 * n))


def test_epsilon_examples():
    e0 = epsilon_std(0)
    assert e0.image_T == -A and e0.image_A.is_zero()
    e2 = epsilon_std(2)
    assert e2 == inner(theta())
    assert epsilon_check(2) == inner(theta()) * -1
    # characterization eps(T) = -ad_T^{2n}(A) for n >= 1
    for n in range(1, 7):
        x = A
        for _ in range(2 * n):
            x = bracket(T, x)
        assert epsilon_std(2 * n).image_T == -x


def test_closed_formula_matches_linear_solve():
    for n in range(1, 9):
        for l1, l2 in (("T", "A"), ("A", "T")):
            _, im2 = _closed_images(n, {l1: 1}, {l2: 1})
            assert im2 == _solve_partner(n, l1, l2)


def test_epsilon_rejects_bad_input():
    with pytest.raises(ValueError):
        epsilon(3, T, A)
    with pytest.raises(ValueError):
        epsilon(2, T, T)
    with pytest.raises(ValueError):
        epsilon(2, T + A, A)


@given(st.integers(0, 6), st.fractions().filter(bool), st.fractions().filter(bool))
def test_scaling_law(n, c1, c2):
    scaled = epsilon(2 * n, T * c1, A * c2)
    assert scaled == epsilon_std(2 * n) * (c1 ** (2 * n - 1) * c2)


def test_sl2_triple():
    f, h, r = sl2_triple()
    assert commutator(r, f) == h
    assert commutator(h, f) == f * -2
    assert commutator(h, r) == r * 2


def test_lowering_kills_and_lowest_weight():
    for n in range(1, 9):
        assert lowered(2 * n, 2 * n - 1).is_zero()
        # the lowest-weight vector is -(2n-2)! times eps_check (see the decision log)
        assert lowered(2 * n, 2 * n - 2) == epsilon_check(2 * n) * -factorial(2 * n - 2)


def test_eps2_central():
    e2 = epsilon_std(2)
    for d in [epsilon_std(4), epsilon_std(6), lowered(6, 3), commutator(epsilon_std(4), epsilon_std(6))]:
        assert is_der0(d)
        assert commutator(e2, d).is_zero()


def test_highest_weight_vectors():
    _, h, r = sl2_triple()
    for d in range(2, 5):
        for a in range(0, 4):
            for b in range(0, 4):
                if min(a, b) and d - 2 > 2 * min(a, b):
                    continue
                w = w_pollack(d, a, b)
                assert commutator(r, w).is_zero()
                assert commutator(h, w) == w * (2 * a + 2 * b - 2 * d + 4)
                assert is_der0(w)


def test_w_pollack_examples():
    assert w_pollack(2, 0, 3).is_zero()
    assert w_pollack(3, 1, 2) == w_pollack(3, 2, 1)
    assert w_pollack(2, 1, 2) == w_pollack(2, 2, 1) * -1
    with pytest.raises(ValueError):
        w_pollack(5, 1, 3)


def test_monodromy_log():
    N = monodromy_log(2)
    assert N.terms[(1, -1)] == epsilon_std(0) * -1
    assert N.terms[(1, 1)] == epsilon_std(2) * Fraction(1, 12)


def test_ad_nilpotent():
    e0 = epsilon_std(0)
    assert ad_der_pow(e0, 5, epsilon_std(6)) == lowered(6, 5)


def lie_elements(max_deg=4):
    mus = [(a, t) for a in range(max_deg + 1) for t in range(max_deg + 1) if 1 <= a + t <= max_deg]
    words = [w for mu in mus for w in lyndon_words(AT, mu)]
    return st.sampled_from(words).map(lambda w: LieElement(standard_bracketing(w)))


@given(lie_elements(), lie_elements(), st.integers(0, 4))
def test_leibniz_and_bidegree(x, y, n):
    d = epsilon_std(2 * n)
    assert d(bracket(x, y)) == bracket(d(x), y) + bracket(x, d(y))
    img = d(x)
    if img:
        (a, t), = img.multidegrees()
        a0, t0 = x.multidegree()
        assert (a - a0, t - t0) == d.shift


@given(lie_elements(3), st.integers(0, 3), st.integers(0, 3))
def test_commutator_acts_as_commutator(x, n, m):
    d1, d2 = epsilon_std(2 * n), epsilon_std(2 * m)
    assert commutator(d1, d2)(x) == d1(d2(x)) - d2(d1(x))


def test_json_shape():
    j = epsilon_std(4).to_json()
    assert set(j) == {"dA", "dT", "dM", "dW"}
    assert (j["dM"], j["dW"]) == (-2, -4)


def test_mismatch_is_runtime_error():
    assert issubclass(EpsilonMismatch, RuntimeError)
    assert isinstance(epsilon_std(8), Derivation)
