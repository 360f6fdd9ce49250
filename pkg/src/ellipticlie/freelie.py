"""Free Lie algebras of rank two inside the tensor algebra.

Elements are kept as noncommutative polynomials (dicts word -> coefficient);
Lyndon coordinates are computed on demand by triangular reduction against
the standard bracketings, which also decides Lie membership.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import kernels as K
from .linalg import Echelon, NotInSpan
from .scalars import as_rational, format_rational, normalize

CACHE_SIZE = int(os.environ.get("ELLIPTICLIE_CACHE_SIZE", "4096")) or None


class NotLie(ValueError):
    """The polynomial is not in the free Lie algebra."""


@dataclass(frozen=True)
class Alphabet:
    name: str
    letters: tuple  # internal one-character letters, in increasing order
    display: tuple

    def show(self, word: str) -> str:
        if self.display == self.letters:
            return word
        table = dict(zip(self.letters, self.display))
        return " ".join(table[c] for c in word)

    def letter(self, name: str) -> str:
        for l, d in zip(self.letters, self.display):
            if name in (l, d):
                return l
        raise ValueError(f"unknown generator {name!r} for alphabet {self.name}")


AT = Alphabet("AT", ("A", "T"), ("A", "T"))
X01 = Alphabet("X", ("0", "1"), ("X0", "X1"))
ALPHABETS = {"AT": AT, "X": X01, "X01": X01}


def alphabet_of(word: str) -> Alphabet:
    return X01 if word and word[0] in "01" else AT


def multidegree(word: str, alphabet: Alphabet = AT) -> tuple[int, int]:
    a = word.count(alphabet.letters[0])
    return a, len(word) - a


# ---------------------------------------------------------------- Lyndon words

def is_lyndon(w: str) -> bool:
    """True iff ``w`` is strictly smaller than each of its proper rotations."""
    n = len(w)
    if n == 0:
        return False
    # Duval: w is Lyndon iff its Lyndon factorization is w itself
    i, j = 0, 1
    while j < n:
        if w[i] < w[j]:
            i = 0
        elif w[i] == w[j]:
            i += 1
        else:
            return False
        j += 1
    return i == 0


def standard_factorization(w: str) -> tuple[str, str]:
    """w = uv with v the longest proper Lyndon suffix."""
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise ValueError(f"{w!r} has no standard factorization")


@lru_cache(maxsize=None)
def standard_bracketing(w: str) -> dict:
    """NC expansion of P_w; P_w = w + (lexicographically larger words)."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return K.bracket(standard_bracketing(u), standard_bracketing(v))


def bracketing_string(w: str, alphabet: Alphabet = AT) -> str:
    if len(w) == 1:
        return alphabet.show(w).replace(" ", "")
    u, v = standard_factorization(w)
    return f"[{bracketing_string(u, alphabet)},{bracketing_string(v, alphabet)}]"


def words_of(alphabet: Alphabet, mu: tuple[int, int]) -> list[str]:
    a, t = mu
    n = a + t
    lo, hi = alphabet.letters
    out = []
    for pos in combinations(range(n), t):
        w = [lo] * n
        for p in pos:
            w[p] = hi
        out.append("".join(w))
    out.sort()
    return out


@lru_cache(maxsize=CACHE_SIZE)
def lyndon_words(alphabet: Alphabet, mu: tuple[int, int]) -> tuple[str, ...]:
    if min(mu) < 0 or sum(mu) < 1:
        return ()
    return tuple(w for w in words_of(alphabet, mu) if is_lyndon(w))


def lyndon_basis(alphabet: Alphabet, mu: tuple[int, int]) -> list["LieElement"]:
    return [LieElement(standard_bracketing(w), alphabet) for w in lyndon_words(alphabet, tuple(mu))]


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def witt_dim(mu: tuple[int, int]) -> int:
    """Dimension of the multidegree ``mu`` piece of the free Lie algebra."""
    a, t = mu
    n = a + t
    if n < 1 or a < 0 or t < 0:
        return 0
    g = math.gcd(a, t)
    total = 0
    for d in range(1, g + 1):
        if g % d == 0:
            total += _mobius(d) * math.comb(n // d, a // d)
    assert total % n == 0
    return total // n


# ------------------------------------------------------------ Lie membership

def _lookup(w):
    return standard_bracketing(w) if is_lyndon(w) else None


def lyndon_coordinates(p: dict) -> dict:
    """Lyndon coordinates ``{word: coeff}`` of a Lie polynomial; NotLie otherwise."""
    coords, rem = K.triangular_reduce(p, _lookup)
    if rem:
        raise NotLie("polynomial is not a Lie element")
    return coords


def from_lyndon_coordinates(coords: dict) -> dict:
    out: dict = {}
    for w, c in coords.items():
        K.add_scaled(out, standard_bracketing(w), c)
    return out


def _degree(p: dict) -> int:
    lengths = {len(w) for w in p}
    if len(lengths) > 1:
        raise ValueError("polynomial is not homogeneous")
    return lengths.pop() if lengths else 0


def dynkin(p: dict) -> dict:
    """Left-normed bracketing l1 l2 ... ln -> [..[[l1,l2],l3]..,ln] extended linearly."""
    if not p:
        return {}
    n = _degree(p)
    if n == 0:
        raise ValueError("Dynkin map needs degree >= 1")
    if n == 1:
        return dict(p)
    split: dict = {}
    for w, c in p.items():
        split.setdefault(w[-1], {})[w[:-1]] = c
    out: dict = {}
    for letter in sorted(split):
        K.add_scaled(out, K.bracket(dynkin(split[letter]), {letter: 1}))
    return out


def is_lie(p: dict) -> bool:
    """Dynkin criterion: D(p) = n p."""
    if not p:
        return True
    n = _degree(p)
    return dynkin(p) == {w: n * c for w, c in p.items()}


def dynkin_project(p: dict, alphabet: Alphabet | None = None) -> "LieElement":
    if not p:
        return LieElement({}, alphabet or AT)
    n = _degree(p)
    if not is_lie(p):
        raise NotLie("Dynkin test failed")
    d = dynkin(p)
    q = {w: Fraction(c) / n for w, c in d.items()}
    return LieElement(q, alphabet or alphabet_of(next(iter(p))))


# ---------------------------------------------------------------- elements

class LieElement:
    """An element of L(A,T) or L(X0,X1), stored as its NC expansion."""

    __slots__ = ("poly", "alphabet", "_hash")

    def __init__(self, poly: dict | None = None, alphabet: Alphabet = AT):
        self.poly = {w: normalize(c) for w, c in (poly or {}).items() if c}
        self.alphabet = alphabet
        self._hash = None

    # constructors
    @classmethod
    def generator(cls, name: str, alphabet: Alphabet = AT) -> "LieElement":
        return cls({alphabet.letter(name): 1}, alphabet)

    @classmethod
    def from_nc(cls, p: dict, alphabet: Alphabet = AT, check: bool = True) -> "LieElement":
        if check:
            for comp in split_by_degree(p).values():
                lyndon_coordinates(comp)
        return cls(p, alphabet)

    @classmethod
    def from_coordinates(cls, coords: dict, alphabet: Alphabet = AT) -> "LieElement":
        return cls(from_lyndon_coordinates(coords), alphabet)

    # arithmetic
    def _check(self, other: "LieElement") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(K.add_scaled(dict(self.poly), other.poly), self.alphabet)

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(K.add_scaled(dict(self.poly), other.poly, -1), self.alphabet)

    def __neg__(self) -> "LieElement":
        return LieElement(K.scale(self.poly, -1), self.alphabet)

    def __mul__(self, c) -> "LieElement":
        if not isinstance(c, int):
            c = as_rational(c)
        return LieElement(K.scale(self.poly, c), self.alphabet)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.poly
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.poly == other.poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.name, frozenset(self.poly.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __repr__(self) -> str:
        return f"LieElement({self.to_string()})"

    # structure
    def is_zero(self) -> bool:
        return not self.poly

    def multidegrees(self) -> list[tuple[int, int]]:
        return sorted({multidegree(w, self.alphabet) for w in self.poly})

    def multidegree(self) -> tuple[int, int]:
        mds = self.multidegrees()
        if len(mds) != 1:
            raise ValueError(f"not homogeneous (multidegrees {mds})")
        return mds[0]

    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def components(self) -> dict:
        out: dict = {}
        for w, c in self.poly.items():
            out.setdefault(multidegree(w, self.alphabet), {})[w] = c
        return {mu: LieElement(p, self.alphabet) for mu, p in sorted(out.items())}

    def degree_part(self, n: int) -> "LieElement":
        return LieElement({w: c for w, c in self.poly.items() if len(w) == n}, self.alphabet)

    def coordinates(self) -> dict:
        """Lyndon coordinates; sorted by word."""
        out: dict = {}
        for comp in split_by_degree(self.poly).values():
            out.update(lyndon_coordinates(comp))
        return dict(sorted(out.items()))

    def to_string(self) -> str:
        if not self.poly:
            return "0"
        parts = []
        for w, c in sorted(self.poly.items(), key=lambda kv: (len(kv[0]), kv[0])):
            parts.append(f"{format_rational(c)}*{self.alphabet.show(w)}")
        return " + ".join(parts)

    def to_json(self, lyndon: bool = False) -> dict:
        if lyndon:
            terms = [
                {"word": self.alphabet.show(w), "bracket": bracketing_string(w, self.alphabet),
                 "coeff": format_rational(c)}
                for w, c in self.coordinates().items()
            ]
            return {"alphabet": self.alphabet.name, "basis": "lyndon", "terms": terms}
        terms = [
            {"word": self.alphabet.show(w), "coeff": format_rational(c)}
            for w, c in sorted(self.poly.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        return {"alphabet": self.alphabet.name, "terms": terms}


def split_by_degree(p: dict) -> dict:
    out: dict = {}
    for w, c in p.items():
        out.setdefault(len(w), {})[w] = c
    return out


def zero(alphabet: Alphabet = AT) -> LieElement:
    return LieElement({}, alphabet)


def gen(name: str) -> LieElement:
    alphabet = X01 if name.upper().startswith("X") else AT
    return LieElement.generator(name.upper(), alphabet)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    x._check(y)
    return LieElement(K.bracket(x.poly, y.poly), x.alphabet)


def ad_pow(x: LieElement, n: int, y: LieElement) -> LieElement:
    """ad_x^n(y) = [x,[x,...[x,y]...]]."""
    if n < 0:
        raise ValueError("ad_pow: n must be >= 0")
    out = y
    for _ in range(n):
        out = bracket(x, out)
    return out


def theta() -> LieElement:
    """theta = [T, A]."""
    return bracket(gen("T"), gen("A"))


def coordinates(x: LieElement, span: Sequence[LieElement]) -> list:
    """Exact coordinates of ``x`` in the (homogeneous) family ``span``."""
    mds = set()
    for v in list(span) + [x]:
        if v:
            mds.add(v.multidegree())
    if len(mds) > 1:
        raise ValueError(f"mixed multidegrees {sorted(mds)}")
    e = Echelon(track=True)
    for v in span:
        e.add(v.coordinates())
    rem, combo = e.reduce(x.coordinates(), {})
    if rem:
        raise NotInSpan("element is not in the span")
    out = [0] * len(span)
    for i, c in combo.items():
        out[i] = normalize(-c)
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(\[|\]|,|\+|-|\*|[A-Za-z][A-Za-z0-9]*|\d+(?:/\d+)?)")


def parse_expr(text: str, alphabet: Alphabet | None = None) -> LieElement:
    """Parse bracket expressions such as ``2*[X0,[X0,X1]] - 1/2*X1``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    names = [t for t in tokens if t[0].isalpha()]
    if alphabet is None:
        alphabet = X01 if any(t.upper().startswith("X") for t in names) else AT
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise ValueError(f"expected {expected or 'token'} in {text!r}")
        i += 1
        return t

    def atom() -> LieElement:
        t = peek()
        if t == "[":
            take("[")
            x = expr()
            take(",")
            y = expr()
            take("]")
            return bracket(x, y)
        if t is not None and t[0].isalpha():
            take()
            return LieElement.generator(t.upper(), alphabet)
        raise ValueError(f"unexpected token {t!r} in {text!r}")

    def term() -> LieElement:
        t = peek()
        if t is not None and t[0].isdigit():
            c = as_rational(take())
            take("*")
            return atom() * c
        return atom()

    def expr() -> LieElement:
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        out = term() * sign
        while peek() in ("+", "-"):
            s = 1 if take() == "+" else -1
            out = out + term() * s
        return out

    out = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


def all_multidegrees(n: int) -> Iterable[tuple[int, int]]:
    return ((a, n - a) for a in range(n + 1))
