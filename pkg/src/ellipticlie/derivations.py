"""Derivations of L(A,T): the epsilon family, sl2 triple, monodromy logarithm
and the highest-weight vectors w^d_{a,b}.

A derivation is stored by the images of A and T (NC expansions of Lie
elements) together with its shift ``(da, dt)`` in (#A, #T).  The weights are
M = -2 #A and W = -(#A + #T), so dM = -2 da and dW = -(da + dt).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import kernels as K
from .freelie import AT, LieElement, gen, lyndon_coordinates, lyndon_words, standard_bracketing
from .linalg import Echelon
from .scalars import as_rational, bernoulli, binomial, factorial


class EpsilonMismatch(RuntimeError):
    """The closed formula for epsilon disagrees with its characterization."""


class Derivation:
    __slots__ = ("dA", "dT", "shift")

    def __init__(self, dA: dict, dT: dict, shift: tuple[int, int]):
        self.dA = {w: c for w, c in dA.items() if c}
        self.dT = {w: c for w, c in dT.items() if c}
        self.shift = tuple(shift)

    # bidegrees
    @property
    def dM(self) -> int:
        return -2 * self.shift[0]

    @property
    def dW(self) -> int:
        return -(self.shift[0] + self.shift[1])

    @property
    def sl2_weight(self) -> int:
        return self.shift[1] - self.shift[0]

    # evaluation
    def images(self) -> dict:
        return {"A": self.dA, "T": self.dT}

    def apply_poly(self, p: dict) -> dict:
        return K.derive(p, self.images())

    def __call__(self, x: LieElement) -> LieElement:
        if x.alphabet != AT:
            raise ValueError("derivations act on L(A,T)")
        return LieElement(self.apply_poly(x.poly), AT)

    apply = __call__

    @property
    def image_A(self) -> LieElement:
        return LieElement(self.dA)

    @property
    def image_T(self) -> LieElement:
        return LieElement(self.dT)

    # linear structure
    def _check(self, other: "Derivation") -> None:
        if self.shift != other.shift and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"cannot add derivations of shifts {self.shift} and {other.shift}")

    def __add__(self, other: "Derivation") -> "Derivation":
        self._check(other)
        shift = self.shift if not self.is_zero() else other.shift
        return Derivation(K.add_scaled(dict(self.dA), other.dA), K.add_scaled(dict(self.dT), other.dT), shift)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + other * -1

    def __neg__(self) -> "Derivation":
        return self * -1

    def __mul__(self, c) -> "Derivation":
        if not isinstance(c, int):
            c = as_rational(c)
        return Derivation(K.scale(self.dA, c), K.scale(self.dT, c), self.shift)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.dA == other.dA and self.dT == other.dT

    def __hash__(self):
        return hash((frozenset(self.dA.items()), frozenset(self.dT.items())))

    def is_zero(self) -> bool:
        return not self.dA and not self.dT

    def __repr__(self) -> str:
        return f"Derivation(shift={self.shift}, dA={LieElement(self.dA).to_string()}, dT={LieElement(self.dT).to_string()})"

    def to_json(self, lyndon: bool = False) -> dict:
        return {
            "dA": LieElement(self.dA).to_json(lyndon),
            "dT": LieElement(self.dT).to_json(lyndon),
            "dM": self.dM,
            "dW": self.dW,
        }


def zero_derivation(shift: tuple[int, int] = (0, 0)) -> Derivation:
    return Derivation({}, {}, shift)


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """[d1, d2](g) = d1(d2 g) - d2(d1 g)."""
    shift = (d1.shift[0] + d2.shift[0], d1.shift[1] + d2.shift[1])
    out = []
    for g in (d1.dA, d2.dA), (d1.dT, d2.dT):
        x = K.derive(g[1], d1.images())
        K.add_scaled(x, K.derive(g[0], d2.images()), -1)
        out.append(x)
    return Derivation(out[0], out[1], shift)


def ad_der_pow(d: Derivation, n: int, e: Derivation) -> Derivation:
    for _ in range(n):
        e = commutator(d, e)
    return e


def inner(x: LieElement) -> Derivation:
    """ad(x): g -> [x, g] for homogeneous ``x``."""
    return Derivation(K.bracket(x.poly, {"A": 1}), K.bracket(x.poly, {"T": 1}), x.multidegree())


def is_der0(d: Derivation) -> bool:
    """d(theta) = [dT, A] + [T, dA] == 0."""
    x = K.bracket(d.dT, {"A": 1})
    K.add_scaled(x, K.bracket({"T": 1}, d.dA))
    return not x


# ------------------------------------------------------------------ epsilon

def _as_scaled_generator(v: LieElement) -> tuple[str, object]:
    if len(v.poly) != 1:
        raise ValueError("epsilon: v1 and v2 must be nonzero multiples of A or T")
    (w, c), = v.poly.items()
    if len(w) != 1:
        raise ValueError("epsilon: v1 and v2 must be nonzero multiples of A or T")
    return w, c


def _closed_images(n: int, v1: dict, v2: dict) -> tuple[dict, dict]:
    if n == 0:
        return K.scale(v2, -1), {}
    ad = [v2]
    for _ in range(2 * n):
        ad.append(K.bracket(v1, ad[-1]))
    x = ad[2 * n - 1]
    im1 = K.bracket(x, v1)
    im2 = K.bracket(x, v2)
    for j in range(n, 2 * n - 1):
        k = 2 * n - 1 - j
        if j > k > 0:
            K.add_scaled(im2, K.bracket(ad[j], ad[k]), -1 if j % 2 == 0 else 1)
    return im1, im2


def _solve_partner(n: int, l1: str, l2: str) -> dict:
    """Unique y with ad_{l1}(y) = [l2, -ad_{l1}^{2n}(l2)]; the image of l2."""
    d1 = {l2: 1}
    for _ in range(2 * n):
        d1 = K.bracket({l1: 1}, d1)
    d1 = K.scale(d1, -1)
    target = K.bracket({l2: 1}, d1)
    w0 = next(iter(target))
    a = w0.count("A")
    mu = (a - (l1 == "A"), len(w0) - a - (l1 == "T"))
    words = lyndon_words(AT, mu)
    e = Echelon(track=True)
    for w in words:
        e.add(lyndon_coordinates(K.bracket({l1: 1}, standard_bracketing(w))))
    if e.relations:
        raise EpsilonMismatch("ad is not injective on the image multidegree")
    rem, combo = e.reduce(lyndon_coordinates(target), {})
    if rem:
        raise EpsilonMismatch("no derivation with the prescribed image annihilates theta")
    y: dict = {}
    for i, c in combo.items():
        K.add_scaled(y, standard_bracketing(words[i]), -c)
    return y


@lru_cache(maxsize=None)
def _epsilon_letters(n: int, l1: str, l2: str) -> Derivation:
    im1, im2 = _closed_images(n, {l1: 1}, {l2: 1})
    if __debug__ and n >= 1:
        if im2 != _solve_partner(n, l1, l2):
            raise EpsilonMismatch(f"closed formula for epsilon_{2 * n} disagrees with its characterization")
    images = {l1: im1, l2: im2}
    if n == 0:
        shift = (1, -1) if l1 == "T" else (-1, 1)
    else:
        shift = (1, 2 * n - 1) if l1 == "T" else (2 * n - 1, 1)
    return Derivation(images.get("A", {}), images.get("T", {}), shift)


def epsilon(n2: int, v1: LieElement, v2: LieElement) -> Derivation:
    """epsilon_{2n}(v1, v2) for v1, v2 nonzero multiples of distinct generators."""
    if n2 < 0 or n2 % 2:
        raise ValueError(f"epsilon index must be even and >= 0, got {n2}")
    l1, c1 = _as_scaled_generator(v1)
    l2, c2 = _as_scaled_generator(v2)
    if l1 == l2:
        raise ValueError("epsilon: v1 and v2 must be independent")
    n = n2 // 2
    base = _epsilon_letters(n, l1, l2)
    if c1 == 1 and c2 == 1:
        return base
    im1, im2 = _closed_images(n, v1.poly, v2.poly)
    images = {l1: K.scale(im1, Fraction(1) / c1), l2: K.scale(im2, Fraction(1) / c2)}
    return Derivation(images.get("A", {}), images.get("T", {}), base.shift)


def epsilon_std(n2: int) -> Derivation:
    return epsilon(n2, gen("T"), gen("A"))


def epsilon_check(n2: int) -> Derivation:
    return epsilon(n2, gen("A"), gen("T"))


@lru_cache(maxsize=None)
def lowered(n2: int, i: int) -> Derivation:
    """ad_{eps_0}^i(eps_{n2})."""
    if i == 0:
        return epsilon_std(n2)
    return commutator(epsilon_std(0), lowered(n2, i - 1))


def sl2_triple() -> tuple[Derivation, Derivation, Derivation]:
    """(lowering, cartan, raising) with [raising, lowering] = cartan."""
    lowering = epsilon_std(0)
    cartan = Derivation({"A": -1}, {"T": 1}, (0, 0))
    raising = Derivation({"T": -1}, {}, (-1, 1))
    return lowering, cartan, raising


# ------------------------------------------------------- monodromy logarithm

class DerivationSum:
    """Finite formal sum of homogeneous derivations, one per shift."""

    def __init__(self, terms: Iterable[Derivation] = ()):
        self.terms: dict = {}
        for d in terms:
            self.add(d)

    def add(self, d: Derivation) -> None:
        if d.is_zero():
            return
        cur = self.terms.get(d.shift)
        new = d if cur is None else cur + d
        if new.is_zero():
            self.terms.pop(d.shift, None)
        else:
            self.terms[d.shift] = new

    def __call__(self, x: LieElement) -> LieElement:
        out: dict = {}
        for d in self.terms.values():
            K.add_scaled(out, d.apply_poly(x.poly))
        return LieElement(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, Derivation):
            other = DerivationSum([other])
        if not isinstance(other, DerivationSum):
            return NotImplemented
        return self.terms == other.terms

    def components(self) -> list[Derivation]:
        return [self.terms[s] for s in sorted(self.terms, key=lambda s: (s[0] + s[1], s))]

    def to_json(self) -> list:
        return [d.to_json() for d in self.components()]


def monodromy_log(m_max: int) -> DerivationSum:
    """N = sum_{0 <= 2m <= m_max} (2m-1) B_{2m}/(2m)! eps_{2m}."""
    if m_max < 0:
        raise ValueError("M_max must be >= 0")
    out = DerivationSum()
    for m2 in range(0, m_max + 1, 2):
        c = (m2 - 1) * bernoulli(m2) / factorial(m2)
        if c:
            out.add(epsilon_std(m2) * c)
    return out


# ------------------------------------------------------- highest weight vectors

def w_pollack_shift(d: int, a: int, b: int) -> tuple[int, int]:
    return d, 2 * a + 2 * b + 4 - d


def w_pollack(d: int, a: int, b: int) -> Derivation:
    """sum_{i+j=d-2} (-1)^i C(d-2,i) (2a-i)!(2b-j)!/((2a)!(2b)!) [e0^i.eps_{2a+2}, e0^j.eps_{2b+2}]."""
    shift = w_pollack_shift(d, a, b)
    if a < 0 or b < 0 or d < 2:
        raise ValueError("w_pollack needs d >= 2 and a, b >= 0")
    if a == 0 or b == 0:
        return zero_derivation(shift)
    if d - 2 > 2 * min(a, b):
        raise ValueError(f"w_pollack: need d - 2 <= 2 min(a, b), got d={d}, a={a}, b={b}")
    out = zero_derivation(shift)
    denom = factorial(2 * a) * factorial(2 * b)
    for i in range(d - 1):
        j = d - 2 - i
        c = Fraction((-1) ** i * binomial(d - 2, i) * factorial(2 * a - i) * factorial(2 * b - j), denom)
        out = out + commutator(lowered(2 * a + 2, i), lowered(2 * b + 2, j)) * c
    return out
