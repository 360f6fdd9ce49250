"""The acceptance checks, each returning a CheckResult."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import bridge, depth, periods, relations, weightfilt as wf
from .derivations import commutator, epsilon_check, epsilon_std, is_der0, lowered, sl2_triple, w_pollack
from .freelie import AT, X01, LieElement, all_multidegrees, bracket, lyndon_words, standard_bracketing, witt_dim
from .scalars import dim_cusp_forms, factorial, format_rational


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    budget: float
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self, timing: bool = False) -> dict:
        out = {"criterion": self.number, "name": self.name, "status": self.status, "detail": self.detail}
        if timing:
            out["seconds"] = round(self.seconds, 3)
            out["budget_seconds"] = self.budget
        return out


def _ratio_to(x, y):
    """r with x == r * y (derivations), else None."""
    if y.is_zero():
        return None
    for g in ("dA", "dT"):
        ys = getattr(y, g)
        if ys:
            w = min(ys)
            r = Fraction(getattr(x, g).get(w, 0)) / ys[w]
            return r if x == y * r else None
    return None


# ------------------------------------------------------------------ 1, 2

def check_theta(n_max: int = 10) -> dict:
    bad = [2 * n for n in range(n_max + 1) if not is_der0(epsilon_std(2 * n))]
    return {"ok": not bad, "n_max": n_max, "failing": bad}


def check_sl2(n_max: int = 8, ab_max: int = 3, d_max: int = 4) -> dict:
    kill, lowest = [], []
    for n in range(1, n_max + 1):
        top = lowered(2 * n, 2 * n - 1)
        if not top.is_zero():
            kill.append(2 * n)
        low = lowered(2 * n, 2 * n - 2)
        target = epsilon_check(2 * n) * factorial(2 * n - 2)
        r = _ratio_to(low, target)
        lowest.append({"n": n, "equal": low == target, "ratio": format_rational(r) if r is not None else None})
    _, _, raising = sl2_triple()
    hw_bad = []
    for d in range(2, d_max + 1):
        for a in range(ab_max + 1):
            for b in range(ab_max + 1):
                if d - 2 > 2 * min(a, b) and min(a, b) > 0:
                    continue
                if not commutator(raising, w_pollack(d, a, b)).is_zero():
                    hw_bad.append([d, a, b])
    ok_low = all(x["equal"] for x in lowest)
    return {
        "ok": not kill and ok_low and not hw_bad,
        "top_power_kills": not kill,
        "lowest_weight_identity": ok_low,
        "lowest_weight": lowest,
        "highest_weight_failures": hw_bad,
    }


# ------------------------------------------------------------------- 3

def check_cubic() -> dict:
    base = relations.delta_cubic_verify()
    perturbed = []
    for form, coeffs in (("raw", relations.RAW_CUBIC), ("head", relations.HEAD_CUBIC), ("tail", relations.TAIL_CUBIC)):
        for i in range(len(coeffs)):
            r = relations.delta_cubic_verify((form, i, 1))
            perturbed.append({"form": form, "index": i, "zero": r["raw_zero"] if form == "raw" else r["rewritten_zero"]})
    controls = not any(p["zero"] for p in perturbed)
    return {
        "ok": base["pass"] and controls,
        "raw_zero": base["raw_zero"],
        "rewritten_zero": base["rewritten_zero"],
        "omega_scale": base["omega_scale"],
        "perturbations_nonzero": controls,
        "perturbations_checked": len(perturbed),
    }


# ------------------------------------------------------------------ 4, 5

def check_quadratic(weights=(12, 14, 16, 18, 20, 22)) -> dict:
    rows, ok = [], True
    for w in weights:
        r = relations.pollack_quadratic_kernel(w)
        good = r["reduced_dim"] == dim_cusp_forms(w) and r["matches_cocycles"]
        ok = ok and good
        rows.append({"weight": w, "reduced_dim": r["reduced_dim"], "dim_S": dim_cusp_forms(w),
                     "raw_dim": r["raw_dim"], "matches_cocycles": r["matches_cocycles"]})
        if w == 12:
            rows[-1]["kernel"] = r["kernel"]
    return {"ok": ok, "weights": rows}


def _proportional(fam: dict, target: dict) -> bool:
    keys = set(fam) | set(target)
    k = min(target)
    if not fam.get(k):
        return False
    r = Fraction(target[k]) / fam[k]
    return all(fam.get(a, 0) * r == target.get(a, 0) for a in keys)


def check_depth3(weight: int = 12) -> dict:
    r = relations.pollack_depth_kernel(weight, 3)
    expected = {1: 4, 2: -25, 3: 42, 4: -25, 5: 4}
    prop = r["kernel_dim"] == 1 and _proportional(r["_kernel"][0], expected)
    generic = {1: 1, 5: 1}
    generic_in = relations.family_in_depth(weight, 3, generic)
    ok = r["kernel_dim"] == 1 and prop and all(r["depth3_certified"]) and not generic_in
    return {
        "ok": ok,
        "cocycle_degree": r["cocycle_degree"],
        "kernel_dim": r["kernel_dim"],
        "kernel": r["kernel"],
        "proportional_to_4_-25_42_-25_4": prop,
        "depth3_certified": r["depth3_certified"],
        "generic_family_in_D3": generic_in,
    }


# ------------------------------------------------------------------- 6

def check_ihara_takao(weight: int = 12, K: int = bridge.DEFAULT_K) -> dict:
    good = bridge.ihara_takao(weight, bridge.auto_coeffs(weight), 3, K)
    n = (weight - 2) // 2
    transverse = bridge.ihara_takao(weight, {1: 1, n - 1: -1}, 3, K)
    ok = (
        good["holds"] and good["on_R0"] == "pass"
        and not transverse["holds"] and transverse["on_R0"] == "fail"
    )
    return {"ok": ok, "cocycle_family": good, "transverse_family": transverse}


# ------------------------------------------------------------------- 7

def check_bridge(K: int = bridge.DEFAULT_K, hom_degree: int = 6, depth_degree: int = 10, d_max: int = 3) -> dict:
    total = bridge.r0(K) + bridge.r1(K) + bridge.rinf(K)
    sum_zero = total.is_zero()
    hom_bad, pairs = [], 0
    words = [w for n in range(1, hom_degree) for mu in all_multidegrees(n) for w in lyndon_words(X01, mu)]
    for u in words:
        for v in words:
            if len(u) + len(v) > hom_degree or u >= v:
                continue
            pairs += 1
            pu, pv = LieElement(standard_bracketing(u), X01), LieElement(standard_bracketing(v), X01)
            lhs = bridge.embed(bracket(pu, pv), K)
            rhs = bridge.bracket_series(bridge.embed(pu, K), bridge.embed(pv, K), K)
            if lhs != rhs:
                hom_bad.append([u, v])
    depth_bad = []
    for n in range(1, depth_degree + 1):
        for mu in all_multidegrees(n):
            for d in range(1, d_max + 1):
                r = bridge.strictness_check(d, mu, depth_degree)
                if not r["preserved"]:
                    depth_bad.append({"d": d, "mu": list(mu)})
    neg = bridge.strictness_check(1, (1, 0), K)
    ok = sum_zero and not hom_bad and not depth_bad and neg["negative_certified"]
    return {
        "ok": ok,
        "K": K,
        "r0_r1_rinf_zero": sum_zero,
        "hom_pairs": pairs,
        "hom_failures": hom_bad,
        "depth_truncation": depth_degree,
        "depth_failures": depth_bad,
        "negative_case": {"d": 1, "mu": [1, 0], "certified": neg["negative_certified"], "witnesses": neg["witnesses"]},
    }


# ------------------------------------------------------------------- 8

def check_cocycles(max_deg: int = 24) -> dict:
    rows, ok = [], True
    for deg in range(2, max_deg + 1, 2):
        Z = periods.cuspidal_cocycles(deg)
        plus, minus = periods.frobenius_split(Z)
        s = dim_cusp_forms(deg + 2) if deg + 2 >= 4 else 0
        cob = periods.coboundary(deg)
        cob_plus = periods.in_space(cob, plus)
        rS = periods.rho(periods.mat_mul2(periods.S, periods.S), deg)
        rU = periods.rho(periods.mat_mul2(periods.U, periods.U2), deg)
        ident = [[int(i == j) for j in range(deg + 1)] for i in range(deg + 1)]
        good = (len(Z) == 2 * s + 1 and len(plus) == s + 1 and len(minus) == s
                and cob_plus and rS == ident and rU == ident)
        ok = ok and good
        rows.append({"deg": deg, "dim_Z": len(Z), "plus": len(plus), "minus": len(minus), "dim_S": s,
                     "coboundary_in_plus": cob_plus, "ok": good})
    return {"ok": ok, "degrees": rows}


# ------------------------------------------------------------------- 9

def check_arithmetic_heads() -> dict:
    rows, ok = [], True
    for m in (2, 3):
        for n in (1, 2, 3):
            try:
                r = relations.arithmetic_head(m, n)
                good = r["pass"]
            except relations.PresentationMismatch:
                good = False
            ok = ok and good
            rows.append({"m": m, "n": n, "agree": good})
    return {"ok": ok, "pairs": rows}


# ------------------------------------------------------------------ 10

def random_nilpotent(rng: random.Random, n: int) -> tuple:
    """(N, P, sizes): N = P J P^-1 with J a random nilpotent Jordan matrix."""
    sizes, left = [], n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    J = [[0] * n for _ in range(n)]
    pos = 0
    for s in sizes:
        for i in range(s - 1):
            J[pos + i][pos + i + 1] = 1
        pos += s
    while True:
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        try:
            Pinv = _inverse(P)
            break
        except ZeroDivisionError:
            continue
    from .linalg import mat_mul

    N = mat_mul(mat_mul(P, J), Pinv)
    return wf.LinearMap(tuple(tuple(r) for r in N)), P, sizes


def _inverse(P: list) -> list:
    n = len(P)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(P)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def jordan_filtration(P: list, sizes: list) -> wf.Filtration:
    """Weight filtration read off a Jordan basis (columns of P)."""
    n = len(P)
    weights = []
    for s in sizes:
        weights += [2 * i - s + 1 for i in range(s)]
    cols = [{r: P[r][j] for r in range(n) if P[r][j]} for j in range(n)]
    lo, hi = min(weights), max(weights)
    spaces = [[cols[j] for j in range(n) if weights[j] <= k] for k in range(lo, hi + 1)]
    return wf.Filtration(n, lo, spaces)


def check_appendix(n_max: int = 6, samples: int = 25, dim_max: int = 8, seed: int = 20240) -> dict:
    sym = []
    for n in range(n_max + 1):
        N, _ = wf.sym_power_example(n)
        F = wf.recenter(wf.weight_filtration(N), n)
        w = wf.monomial_weights(F)
        sym.append({"n": n, "ok": all(w[j] == 2 * j for j in range(n + 1))})
    W, N = wf.gr_trivial_example()
    trivial_ok = bool(wf.verify_relative(W, N, W))
    W1, N1 = wf.genus1_counterexample()
    g1 = wf.verify_relative(W1, N1, W1)
    rng = random.Random(seed)
    uniq_bad = []
    for i in range(samples):
        n = rng.randint(1, dim_max)
        Nr, P, sizes = random_nilpotent(rng, n)
        F = wf.weight_filtration(Nr)
        G = jordan_filtration(P, sizes)
        if not (wf.verify_weight_filtration(Nr, G) and F == G):
            uniq_bad.append({"sample": i, "dim": n, "jordan": sizes})
    ok = all(x["ok"] for x in sym) and trivial_ok and not g1 and g1.clause == 1 and not uniq_bad
    return {
        "ok": ok,
        "sym_power": sym,
        "gr_trivial_accepted": trivial_ok,
        "genus1_rejected": not g1,
        "genus1_check": g1.to_json(),
        "uniqueness_samples": samples,
        "uniqueness_failures": uniq_bad,
        "seed": seed,
    }


# ------------------------------------------------------------------ 11

def check_bookkeeping(witt_degree: int = 14, conv_max: int = 10, gr1_degree: int = 10) -> dict:
    witt_bad = [list(mu) for n in range(1, witt_degree + 1) for mu in all_multidegrees(n)
                if len(lyndon_words(AT, mu)) != witt_dim(mu)]
    conv = [depth.convolution_check(m) for m in range(1, conv_max + 1)]
    conv_bad = [c["m"] for c in conv if not c["ok"]]
    gr1_bad = []
    for n in range(1, gr1_degree + 1):
        for a, t in all_multidegrees(n):
            want = int(a >= 1 and t >= 1)
            method = "recursive" if n <= 8 else "lyndon"
            if depth.gr_depth_dim(1, (a, t), method) != want:
                gr1_bad.append([a, t])
    return {
        "ok": not witt_bad and not conv_bad and not gr1_bad,
        "witt_degree": witt_degree,
        "witt_failures": witt_bad,
        "convolution_max_m": conv_max,
        "convolution_failures": conv_bad,
        "gr1_degree": gr1_degree,
        "gr1_failures": gr1_bad,
    }


# -------------------------------------------------------------- registry

CRITERIA = [
    (1, "theta-annihilation", 5, check_theta),
    (2, "sl2-structure", 30, check_sl2),
    (3, "weight-12-cubic", 60, check_cubic),
    (4, "quadratic-kernels", 300, check_quadratic),
    (5, "depth-3-kernel", 600, check_depth3),
    (6, "ihara-takao", 600, check_ihara_takao),
    (7, "genus-0-bridge", 120, check_bridge),
    (8, "cocycle-spaces", 30, check_cocycles),
    (9, "arithmetic-heads", 10, check_arithmetic_heads),
    (10, "weight-filtrations", 30, check_appendix),
    (11, "bookkeeping", 60, check_bookkeeping),
]


def run_check(number: int, **kwargs) -> CheckResult:
    for num, name, budget, fn in CRITERIA:
        if num == number:
            t = time.perf_counter()
            detail = fn(**kwargs)
            secs = time.perf_counter() - t
            ok = bool(detail.pop("ok"))
            return CheckResult(num, name, ok, budget, detail, secs)
    raise KeyError(f"no criterion {number}")


def run_all(max_weight: int = 22, K: int = bridge.DEFAULT_K, fail_fast: bool = False, only=None):
    quad = tuple(w for w in (12, 14, 16, 18, 20, 22) if w <= max_weight)
    kwargs = {
        4: {"weights": quad},
        6: {"K": K},
        7: {"K": K},
        8: {"max_deg": max(max_weight + 2, 2)},
    }
    out = []
    for num, _, _, _ in CRITERIA:
        if only and num not in only:
            continue
        r = run_check(num, **kwargs.get(num, {}))
        out.append(r)
        if fail_fast and not r.ok:
            break
    return out
