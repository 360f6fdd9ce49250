import pytest
from hypothesis import given, strategies as st

from ellipticlie import bridge
from ellipticlie.freelie import X01, LieElement, all_multidegrees, bracket, lyndon_words, parse_expr, standard_bracketing
from ellipticlie.scalars import bernoulli, factorial


def test_r_sum_vanishes():
    for K in range(1, 17):
        assert (bridge.r0(K) + bridge.r1(K) + bridge.rinf(K)).is_zero()


def test_r0_leading_terms():
    r = bridge.r0(4)
    assert r.component(1).poly == {"A": 1}
    # B_1 = -1/2: -1/2 [T, A]
    assert r.component(2).poly == {"TA": bernoulli(1), "AT": -bernoulli(1)}
    assert bernoulli(2) / factorial(2) == r.component(3).poly["TTA"]


def test_embed_matches_substitution():
    for n in range(1, 7):
        for mu in all_multidegrees(n):
            for w in lyndon_words(X01, mu):
                x = LieElement(standard_bracketing(w), X01)
                assert bridge.embed(x, 10) == bridge.embed_nc(x, 10)


x_words = st.integers(1, 3).flatmap(lambda n: st.sampled_from([w for mu in all_multidegrees(n) for w in lyndon_words(X01, mu)]))


@given(x_words, x_words)
def test_embed_is_truncated_homomorphism(u, v):
    x, y = LieElement(standard_bracketing(u), X01), LieElement(standard_bracketing(v), X01)
    K = 9
    assert bridge.embed(bracket(x, y), K) == bridge.bracket_series(bridge.embed(x, K), bridge.embed(y, K), K)


def test_truncation_too_small():
    with pytest.raises(bridge.TruncationTooSmall):
        bridge.embed(parse_expr("[X0,[X0,X1]]"), 2)


def test_strictness_examples():
    neg = bridge.strictness_check(1, (1, 0), 16)
    assert neg["negative_certified"] and neg["status"] == "pass"
    assert neg["witnesses"][0]["lowest_failing_degree"] == 1
    for d, mu in [(1, (2, 1)), (2, (1, 2)), (2, (3, 1))]:
        r = bridge.strictness_check(d, mu, 12)
        assert r["preserved"] and r["status"] == "pass"


def test_depth_preserved_to_degree_8():
    for n in range(1, 9):
        for mu in all_multidegrees(n):
            for d in (1, 2, 3):
                assert bridge.strictness_check(d, mu, 8)["preserved"]


def test_ihara_takao_weight_12():
    coeffs = bridge.auto_coeffs(12)
    assert coeffs == {1: 1, 2: -3, 3: 3, 4: -1}
    good = bridge.ihara_takao(12, coeffs)
    assert good["holds"] and good["on_R0"] == "pass" and good["zero_derivation"]
    bad = bridge.ihara_takao(12, {1: 1, 4: -1})
    assert not bad["holds"] and bad["on_R0"] == "fail" and bad["r0_first_failing_degree"] == 1


def test_ihara_takao_weight_14_all_fail():
    for a in (1, 2):
        r = bridge.ihara_takao(14, {a: 1, 6 - a: -1})
        assert not r["holds"]


def test_ihara_takao_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        bridge.ihara_takao(12, {1: 1, 4: 1})


def test_series_json():
    j = bridge.r1(4).to_json()
    assert j["K"] == 4 and j["components"][0]["degree"] == 2
