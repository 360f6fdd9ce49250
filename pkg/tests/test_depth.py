import pytest
from hypothesis import given, strategies as st

from ellipticlie.depth import (
    DegreeBoundExceeded,
    NotDer0,
    convolution_check,
    depth_basis_AT,
    depth_basis_X,
    depth_membership,
    depth_rows_lyndon,
    depth_rows_recursive,
    derivation_depth,
    gr_depth_dim,
    gr_depth_dim_formula,
    member_AT,
)
from ellipticlie.derivations import Derivation, commutator, epsilon_std, lowered, sl2_triple, w_pollack
from ellipticlie.freelie import AT, LieElement, all_multidegrees, bracket, gen, lyndon_words, standard_bracketing, theta, witt_dim

A, T = gen("A"), gen("T")


def test_lyndon_criterion_equals_recursion():
    for n in range(1, 10):
        for mu in all_multidegrees(n):
            for d in range(0, 5):
                assert depth_rows_lyndon(d, mu) == depth_rows_recursive(d, mu), (d, mu)


def test_gr_dims_formula():
    for n in range(1, 11):
        for mu in all_multidegrees(n):
            for d in range(0, 4):
                assert gr_depth_dim(d, mu, "lyndon") == gr_depth_dim_formula(d, mu)
    for n in range(1, 9):
        for a, t in all_multidegrees(n):
            assert gr_depth_dim(1, (a, t)) == int(a >= 1 and t >= 1)


def test_basis_examples():
    assert depth_basis_AT(0, (2, 3)).dim == witt_dim((2, 3))
    assert depth_basis_AT(1, (1, 0)).dim == 0
    assert depth_basis_X(2, (3, 1)).dim == 0
    assert depth_basis_X(1, (0, 1)).dim == 1
    assert depth_basis_X(2, (1, 2)).dim == 1
    with pytest.raises(DegreeBoundExceeded):
        depth_basis_AT(1, (10, 10))


def test_membership_examples():
    th = theta()
    assert depth_membership(th, 1)
    assert not depth_membership(th, 2)
    assert depth_membership(bracket(th, bracket(T, th)), 2)


def _basis(mu, j):
    return [LieElement(standard_bracketing(w)) for w in lyndon_words(AT, mu) if j == 0 or w.count("AT") >= j]


def test_central_filtration_exhaustive_small():
    mus = [mu for n in range(1, 6) for mu in all_multidegrees(n)]
    for nu in mus:
        for rho in mus:
            if sum(nu) + sum(rho) > 8:
                continue
            for j in range(0, 3):
                for k in range(0, 3):
                    for x in _basis(nu, j):
                        for y in _basis(rho, k):
                            assert member_AT(bracket(x, y), j + k)


words14 = st.integers(1, 7).flatmap(lambda n: st.sampled_from([w for mu in all_multidegrees(n) for w in lyndon_words(AT, mu)]))


@given(words14, words14)
def test_central_filtration_random_degree_14(u, v):
    x, y = LieElement(standard_bracketing(u)), LieElement(standard_bracketing(v))
    j = u.count("AT") if len(u) > 1 else 0
    k = v.count("AT") if len(v) > 1 else 0
    assert member_AT(bracket(x, y), j + k)


def test_derivation_depth_examples():
    assert derivation_depth(epsilon_std(4), 1)
    assert not derivation_depth(epsilon_std(0), 1)
    assert derivation_depth(w_pollack(3, 1, 2), 2)
    with pytest.raises(NotDer0):
        derivation_depth(Derivation({"A": 1}, {}, (0, 0)), 1)


def test_pollack_lemma_on_small_brackets():
    gens = [epsilon_std(2 * n) for n in range(0, 5)]
    level = list(gens)
    pool = list(gens)
    for _ in range(2):
        new = [commutator(x, y) for x in level for y in gens]
        new = [d for d in new if not d.is_zero() and sum(d.shift) <= 14]
        pool += new
        level = new
    for d in pool:
        for k in range(1, 5):
            derivation_depth(d, k)  # raises on a violation


def test_weight_zero_exceptions_do_not_raise():
    _, _, r = sl2_triple()
    assert not derivation_depth(r, 1)
    assert derivation_depth(lowered(4, 2), 1)


@pytest.mark.parametrize("m", range(1, 11))
def test_convolution(m):
    assert convolution_check(m)["ok"]
