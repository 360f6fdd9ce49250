import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellipticlie import _kernels_py as py
from ellipticlie import kernels
from ellipticlie.freelie import (
    AT,
    X01,
    LieElement,
    NotLie,
    all_multidegrees,
    bracket,
    dynkin,
    from_lyndon_coordinates,
    gen,
    is_lie,
    is_lyndon,
    lyndon_basis,
    lyndon_coordinates,
    lyndon_words,
    parse_expr,
    standard_bracketing,
    theta,
    witt_dim,
)

A, T = gen("A"), gen("T")


def brute_lyndon(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def test_witt_examples():
    assert witt_dim((1, 0)) == 1
    assert witt_dim((1, 1)) == 1
    assert sum(witt_dim(mu) for mu in all_multidegrees(10)) == 99


def test_lyndon_counts_match_witt():
    for n in range(1, 15):
        for mu in all_multidegrees(n):
            assert len(lyndon_words(AT, mu)) == witt_dim(mu)


@given(st.text(alphabet="AT", min_size=1, max_size=12))
def test_is_lyndon_matches_rotation_definition(w):
    assert is_lyndon(w) == brute_lyndon(w)


def test_dynkin_idempotence_and_roundtrip():
    for n in range(1, 11):
        for mu in all_multidegrees(n):
            for w in lyndon_words(AT, mu):
                p = standard_bracketing(w)
                assert dynkin(p) == {u: n * c for u, c in p.items()}
                assert lyndon_coordinates(p) == {w: 1}


def test_roundtrip_degree_14_sample():
    for mu in [(7, 7), (5, 9), (10, 4)]:
        for w in lyndon_words(AT, mu)[:40]:
            assert from_lyndon_coordinates(lyndon_coordinates(standard_bracketing(w))) == standard_bracketing(w)


def test_non_lie_rejected():
    assert not is_lie({"AT": 1})
    with pytest.raises(NotLie):
        lyndon_coordinates({"AT": 1})


def random_lie(draw_words, coeffs):
    x = LieElement({}, AT)
    for w, c in zip(draw_words, coeffs):
        x = x + LieElement(standard_bracketing(w), AT) * c
    return x


def homogeneous(mu):
    words = lyndon_words(AT, mu)
    return st.lists(st.sampled_from(words), min_size=1, max_size=3).flatmap(
        lambda ws: st.lists(st.integers(-3, 3), min_size=len(ws), max_size=len(ws)).map(
            lambda cs: random_lie(ws, cs)
        )
    )


mus = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda m: 1 <= sum(m) <= 3 and witt_dim(m) > 0)
elements = mus.flatmap(homogeneous)


@given(elements, elements, elements)
def test_antisymmetry_and_jacobi(x, y, z):
    assert bracket(x, y) == -bracket(y, x)
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jac.is_zero()
    assert is_lie(bracket(x, bracket(y, z)).poly)


def test_theta_and_parse():
    assert theta() == bracket(T, A)
    x = parse_expr("2*[X0,[X0,X1]] - 1/2*X1")
    assert x.alphabet == X01
    assert x.coordinates() == {"001": 2, "1": Fraction(-1, 2)}


def test_json_forms():
    x = bracket(T, A)
    assert x.to_json() == {"alphabet": "AT", "terms": [{"word": "AT", "coeff": "-1"}, {"word": "TA", "coeff": "1"}]}
    assert x.to_json(lyndon=True)["terms"][0]["coeff"] == "-1"


def test_lyndon_basis_is_lie():
    for x in lyndon_basis(X01, (3, 2)):
        assert x.alphabet == X01 and is_lie(x.poly)


# --------------------------------------------------------- kernel backends

polys = st.dictionaries(st.text(alphabet="AT", min_size=1, max_size=5), st.integers(-4, 4).filter(bool), max_size=6)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
@given(polys, polys)
def test_backends_agree(p, q):
    from ellipticlie import _ckernels as cy

    assert cy.bracket(p, q) == py.bracket(p, q)
    assert cy.mul(p, q) == py.mul(p, q)
    assert cy.add_scaled(dict(p), q, 3) == py.add_scaled(dict(p), q, 3)
    imgs = {"A": {"AT": 1, "TA": -1}, "T": {"T": 2}}
    assert cy.derive(p, imgs) == py.derive(p, imgs)
    assert cy.substitute(p, imgs, 6) == py.substitute(p, imgs, 6)


def test_pure_python_backend_in_subprocess():
    import os
    import subprocess
    import sys

    code = (
        "from ellipticlie import kernels; from ellipticlie.derivations import epsilon_std, is_der0;"
        "assert kernels.BACKEND == 'python'; assert all(is_der0(epsilon_std(2*n)) for n in range(6)); print('ok')"
    )
    env = dict(os.environ, ELLIPTICLIE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "ok", out.stderr


def test_words_exhaustive_small():
    for n in range(1, 8):
        words = ["".join(w) for w in itertools.product("AT", repeat=n)]
        assert sum(len(lyndon_words(AT, mu)) for mu in all_multidegrees(n)) == sum(map(brute_lyndon, words))
