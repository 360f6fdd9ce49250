from fractions import Fraction

import pytest

from ellipticlie import relations as R
from ellipticlie.derivations import epsilon_std, is_der0, w_pollack
from ellipticlie.freelie import theta
from ellipticlie.derivations import inner
from ellipticlie.scalars import dim_cusp_forms


def test_w_bold_single_term():
    x = R.w_bold(2, 1, 2)
    # d = 2 forces i = j = 0 and the scalar 2! 4! / 4 = 12
    assert x == R.abracket(R.AbstractLieExpr({(R.e(4),): 1}), R.AbstractLieExpr({(R.e(6),): 1})) * 12


def test_w_bold_vanishing():
    assert R.w_bold(3, 0, 2) == R.AbstractLieExpr()


def test_monodromy_dictionary():
    for d, a, b in [(2, 1, 2), (3, 1, 2), (4, 2, 2), (3, 2, 3), (4, 1, 3), (2, 3, 4)]:
        img = R.monodromy_image(R.w_bold(d, a, b))
        assert img == w_pollack(d, a, b)
        assert is_der0(img)
    assert R.generator_image(R.e(2)) == inner(theta()) * 2
    with pytest.raises(R.ArithmeticGenerator):
        R.monodromy_image(R.AbstractLieExpr({(R.z(3),): 1}))


@pytest.mark.parametrize("weight", [12, 14, 16, 18, 20, 22])
def test_quadratic_kernel(weight):
    r = R.pollack_quadratic_kernel(weight)
    assert r["reduced_dim"] == dim_cusp_forms(weight)
    assert r["matches_cocycles"]


def test_quadratic_kernel_weight_12_vector():
    r = R.pollack_quadratic_kernel(12)
    (k,) = r["_kernel"]
    assert k == {1: 1, 2: -3, 3: 3, 4: -1}


@pytest.mark.parametrize("weight,dim", [(10, 0), (12, 1), (14, 0)])
def test_depth_kernel(weight, dim):
    r = R.pollack_depth_kernel(weight, 3)
    assert r["kernel_dim"] == dim
    assert r["matches_cocycles"]
    assert all(r["depth3_certified"])


def test_depth_kernel_weight_12_family():
    (k,) = R.pollack_depth_kernel(12, 3)["_kernel"]
    scale = Fraction(4) / k[1]
    assert {a: c * scale for a, c in k.items()} == {1: 4, 2: -25, 3: 42, 4: -25, 5: 4}
    assert not R.family_in_depth(12, 3, {1: 1, 5: 1})


def test_depth_kernel_d2_reduces_to_quadratic():
    for w in (12, 16):
        q = R.pollack_quadratic_kernel(w)
        d = R.pollack_depth_kernel(w, 2)
        assert d["matches_cocycles"] == q["matches_cocycles"]


def test_cubic_identity():
    r = R.delta_cubic_verify()
    assert r["raw_zero"] and r["rewritten_zero"] and r["pass"]
    assert r["omega_scale"] == "1/2"


@pytest.mark.parametrize("i", range(7))
def test_cubic_raw_perturbations(i):
    assert not R.delta_cubic_verify(("raw", i, 1))["raw_zero"]


@pytest.mark.parametrize("form,i", [("head", j) for j in range(5)] + [("tail", 0), ("tail", 1)])
def test_cubic_rewritten_perturbations(form, i):
    assert not R.delta_cubic_verify((form, i, Fraction(1, 3)))["rewritten_zero"]


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_arithmetic_heads(m, n):
    r = R.arithmetic_head(m, n)
    assert r["pass"]
    if m == 2:
        assert r["m2_display_agree"]


def test_arithmetic_head_m1_vanishes():
    r = R.arithmetic_head(1, 2)
    assert r["second"] == R.AbstractLieExpr().to_json()


def test_generator_names():
    assert R.e(4, 1).bidegree == (-4, -4)
    assert R.e(4, 1).name() == "e0^1.e4" and R.z(5).name() == "z5"
    assert R.e(2).is_central and not R.e(4).is_central and not R.z(3).is_central
    with pytest.raises(ValueError):
        R.e(4, 3)
    with pytest.raises(ValueError):
        R.z(4)
    assert epsilon_std(2) == R.generator_image(R.e(2)) * Fraction(1, 2)
