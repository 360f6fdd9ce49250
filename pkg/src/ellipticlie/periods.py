"""SL2(Z) acting on homogeneous polynomials in a, b; cuspidal cocycles.

gamma = [[p, q], [r, s]] acts by a -> p a - r b, b -> -q a + s b, which is
the substitution (a, -b) -> (a, -b) gamma.  This is a left action:
act(g h, f) = act(g, act(h, f)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import linear_relations, span_basis
from .scalars import format_rational, normalize

Matrix = tuple  # ((p, q), (r, s))

I2: Matrix = ((1, 0), (0, 1))
S: Matrix = ((0, -1), (1, 0))
T: Matrix = ((1, 1), (0, 1))


def mat_mul2(g: Matrix, h: Matrix) -> Matrix:
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return ((a * e + b * x, a * f + b * y), (c * e + d * x, c * f + d * y))


def det2(g: Matrix) -> int:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


U: Matrix = mat_mul2(S, T)
U2: Matrix = mat_mul2(U, U)


def check_sl2(g: Matrix) -> Matrix:
    g = tuple(tuple(int(x) for x in row) for row in g)
    if det2(g) != 1:
        raise ValueError(f"matrix {g} does not have determinant 1")
    return g


@dataclass(frozen=True)
class SymPower:
    """sum_i coeffs[i] a^i b^(deg - i)."""

    deg: int
    coeffs: tuple

    def __post_init__(self):
        if self.deg < 0 or len(self.coeffs) != self.deg + 1:
            raise ValueError("coefficient vector must have length deg + 1")
        object.__setattr__(self, "coeffs", tuple(normalize(Fraction(c)) for c in self.coeffs))

    @classmethod
    def monomial(cls, deg: int, i: int, c=1) -> "SymPower":
        v = [0] * (deg + 1)
        v[i] = c
        return cls(deg, tuple(v))

    @classmethod
    def from_dict(cls, deg: int, terms: dict) -> "SymPower":
        v = [0] * (deg + 1)
        for i, c in terms.items():
            v[i] += c
        return cls(deg, tuple(v))

    def coeff(self, i: int):
        return self.coeffs[i]

    def __add__(self, other: "SymPower") -> "SymPower":
        return SymPower(self.deg, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SymPower") -> "SymPower":
        return SymPower(self.deg, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c) -> "SymPower":
        return SymPower(self.deg, tuple(c * x for x in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def frobenius(self) -> "SymPower":
        """F_inf: a -> a, b -> -b."""
        return SymPower(self.deg, tuple(c * (-1) ** (self.deg - i) for i, c in enumerate(self.coeffs)))

    def to_key_dict(self) -> dict:
        # elimination keys: index j <-> a^(deg - j), so pivots favour high a-degree
        return {self.deg - i: c for i, c in enumerate(self.coeffs) if c}

    @classmethod
    def from_key_dict(cls, deg: int, v: dict) -> "SymPower":
        return cls.from_dict(deg, {deg - j: c for j, c in v.items()})

    def terms(self) -> list:
        return [(i, c) for i, c in sorted(enumerate(self.coeffs), reverse=True) if c]

    def to_string(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{format_rational(c)}*a^{i} b^{self.deg - i}" for i, c in self.terms())

    def to_json(self) -> list:
        return [{"monomial": f"a^{i} b^{self.deg - i}", "coeff": format_rational(c)} for i, c in self.terms()]


def _poly_mul(x: list, y: list) -> list:
    out = [0] * (len(x) + len(y) - 1)
    for i, u in enumerate(x):
        if u:
            for j, v in enumerate(y):
                if v:
                    out[i + j] += u * v
    return out


def _poly_pow(x: list, e: int) -> list:
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, x)
    return out


def act(g: Matrix, f: SymPower) -> SymPower:
    """Substitute a -> p a - r b, b -> -q a + s b (polys indexed by a-exponent,
    stored here as lists indexed by b-exponent for the binomial products)."""
    (p, q), (r, s) = check_sl2(g)
    # as polynomials in b with a implicit: index = b-exponent
    img_a = [p, -r]
    img_b = [-q, s]
    n = f.deg
    out = [0] * (n + 1)
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        prod = _poly_mul(_poly_pow(img_a, i), _poly_pow(img_b, n - i))
        for bexp, v in enumerate(prod):
            if v:
                out[n - bexp] += c * v
    return SymPower(n, tuple(out))


def rho(g: Matrix, deg: int) -> list[list]:
    """Matrix of act(g) on the monomial basis a^i b^(deg-i); column i = image of a^i b^(deg-i)."""
    cols = [act(g, SymPower.monomial(deg, i)).coeffs for i in range(deg + 1)]
    return [[cols[j][i] for j in range(deg + 1)] for i in range(deg + 1)]


def _kernel_of_ops(deg: int, ops: Sequence[Sequence[Matrix]]) -> list[SymPower]:
    """Common kernel of the operators sum_{g in group} act(g)."""
    cols = []
    for i in range(deg + 1):
        m = SymPower.monomial(deg, i)
        v: dict = {}
        for k, group in enumerate(ops):
            tot = SymPower(deg, (0,) * (deg + 1))
            for g in group:
                tot = tot + act(g, m)
            for j, c in enumerate(tot.coeffs):
                if c:
                    v[(k, j)] = c
        cols.append(v)
    rels = linear_relations(cols)  # over column index i
    vecs = [SymPower.from_dict(deg, r) for r in rels]
    return canonical(deg, vecs)


def canonical(deg: int, vecs: Sequence[SymPower]) -> list[SymPower]:
    """RREF basis over monomials ordered by descending a-degree."""
    return [SymPower.from_key_dict(deg, r) for r in span_basis(v.to_key_dict() for v in vecs)]


def cuspidal_cocycles(deg: int) -> list[SymPower]:
    """Basis of ker(1 + S) and ker(1 + U + U^2) on polynomials of degree ``deg``."""
    if deg < 0 or deg % 2:
        raise ValueError("degree must be even and >= 0")
    return _kernel_of_ops(deg, [(I2, S), (I2, U, U2)])


class NotStable(ValueError):
    pass


def frobenius_split(basis: Sequence[SymPower]) -> tuple[list[SymPower], list[SymPower]]:
    """(+1, -1) eigenspaces of F_inf: even and odd degree in a."""
    if not basis:
        return [], []
    deg = basis[0].deg
    evens, odds = [], []
    for v in basis:
        evens.append(SymPower(deg, tuple(c if i % 2 == 0 else 0 for i, c in enumerate(v.coeffs))))
        odds.append(SymPower(deg, tuple(c if i % 2 else 0 for i, c in enumerate(v.coeffs))))
    space = span_basis(v.to_key_dict() for v in basis)
    both = span_basis([v.to_key_dict() for v in evens + odds])
    if both != space:
        raise NotStable("space is not stable under F_inf")
    return canonical(deg, evens), canonical(deg, odds)


class CoboundaryError(RuntimeError):
    pass


def coboundary(deg: int) -> SymPower:
    if deg < 2 or deg % 2:
        raise ValueError("coboundary needs even degree >= 2")
    v = SymPower.from_dict(deg, {0: 1, deg: -1})
    if not in_space(v, cuspidal_cocycles(deg)):
        raise CoboundaryError("b^2n - a^2n is not a cuspidal cocycle")
    return v


def in_space(v: SymPower, basis: Sequence[SymPower]) -> bool:
    from .linalg import in_span

    return in_span(v.to_key_dict(), [b.to_key_dict() for b in basis])


def coboundary_cocycle(deg: int, g: Matrix) -> SymPower:
    """gamma -> (gamma - 1) a^deg; its value on S is the coboundary, on T it is 0."""
    f = SymPower.monomial(deg, deg)
    return act(g, f) - f


class ParityError(ValueError):
    pass


def relation_coeffs(deg: int, d: int, r: SymPower) -> dict:
    """Family c_a (a + b = deg/2 + d - 2) attached to r = sum c_A a^A b^B.

    a = (A + d - 2)/2, b = (B + d - 2)/2; needs A == B == d mod 2.
    """
    if r.deg != deg:
        raise ValueError("degree mismatch")
    n = deg // 2 + d - 2
    out = {}
    for A, c in enumerate(r.coeffs):
        if not c:
            continue
        if (A - d) % 2:
            raise ParityError(f"monomial a^{A} b^{deg - A} has the wrong parity for d={d}")
        out[(A + d - 2) // 2] = c
    fam = {a: out.get(a, 0) for a in range(n + 1) if a >= 0}
    sign = (-1) ** d
    if any(fam[a] + sign * fam[n - a] for a in fam):
        raise ParityError(f"family violates c_a + (-1)^{d} c_b = 0")
    return fam


def middle_families(deg: int, sign: int) -> list[dict]:
    """Coefficient families (a = 1..n-1) from the sign-part of the cocycle space."""
    plus, minus = frobenius_split(cuspidal_cocycles(deg))
    part = plus if sign > 0 else minus
    n = deg // 2
    d = 2 if sign > 0 else 3
    fams = []
    for v in part:
        fam = relation_coeffs(deg, d, v)
        top = n + d - 2
        fams.append({a: c for a, c in fam.items() if 1 <= a <= top - 1})
    vecs = span_basis(f for f in fams if any(f.values()))
    return vecs
