"""Depth filtrations on L(A,T), L(X0,X1) and on Der^0.

On L(A,T), D^1 is the commutator subalgebra and D^d its lower central
series.  The normative construction is the recursion
D^d(mu) = sum_nu [D^1(nu), D^{d-1}(mu - nu)].  For large multidegrees the
package uses the equivalent Lyndon criterion: D^d(mu) is spanned by the
standard bracketings P_w of Lyndon words w containing the factor "AT" at
least d times.  Agreement of the two is checked in the test suite.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, gcd

from . import kernels as K
from .derivations import Derivation, is_der0
from .freelie import (
    AT,
    X01,
    Alphabet,
    LieElement,
    from_lyndon_coordinates,
    lyndon_coordinates,
    lyndon_words,
    standard_bracketing,
    witt_dim,
)
from .freelie import _mobius
from .linalg import Echelon

MAX_DEGREE = int(os.environ.get("ELLIPTICLIE_MAX_DEGREE", "18"))


class DegreeBoundExceeded(ValueError):
    pass


class PollackLemmaViolation(RuntimeError):
    """delta(A) and delta(T) disagree on depth membership (implementation bug)."""


class NotDer0(ValueError):
    pass


@dataclass
class SubspaceBasis:
    alphabet: Alphabet
    d: int
    mu: tuple
    rows: list = field(default_factory=list)  # RREF over Lyndon coordinates

    @property
    def dim(self) -> int:
        return len(self.rows)

    def elements(self) -> list[LieElement]:
        return [LieElement(from_lyndon_coordinates(r), self.alphabet) for r in self.rows]

    def contains(self, x: LieElement) -> bool:
        e = Echelon()
        for r in self.rows:
            e.add(r)
        return e.contains(x.coordinates())

    def to_json(self) -> dict:
        from .scalars import format_rational

        return {
            "algebra": self.alphabet.name,
            "d": self.d,
            "mu": list(self.mu),
            "dim": self.dim,
            "basis": [
                [{"word": self.alphabet.show(w), "coeff": format_rational(c)} for w, c in sorted(r.items())]
                for r in self.rows
            ],
        }


def _check_bound(mu, max_degree):
    if sum(mu) > max_degree:
        raise DegreeBoundExceeded(f"total degree {sum(mu)} exceeds bound {max_degree}")


def at_blocks(word: str) -> int:
    return word.count("AT")


# ------------------------------------------------------------------ L(A,T)

@lru_cache(maxsize=None)
def _recursive_rows(d: int, mu: tuple) -> tuple:
    """RREF rows of D^d(mu) from the lower-central-series recursion."""
    a, t = mu
    n = a + t
    if n < 1 or a < 0 or t < 0:
        return ()
    if d == 0:
        return tuple({w: 1} for w in lyndon_words(AT, mu))
    if d == 1:
        return tuple({w: 1} for w in lyndon_words(AT, mu)) if n >= 2 else ()
    e = Echelon()
    for a1 in range(a + 1):
        for t1 in range(t + 1):
            nu = (a1, t1)
            rest = (a - a1, t - t1)
            if a1 + t1 < 2 or sum(rest) < 2 * (d - 1):
                continue
            left = [standard_bracketing(w) for w in lyndon_words(AT, nu)]
            right = [from_lyndon_coordinates(r) for r in _recursive_rows(d - 1, rest)]
            for x in left:
                for y in right:
                    e.add(lyndon_coordinates(K.bracket(x, y)))
    return tuple(e.rref())


def depth_rows_recursive(d: int, mu: tuple) -> list:
    return list(_recursive_rows(d, tuple(mu)))


def depth_rows_lyndon(d: int, mu: tuple) -> list:
    n = sum(mu)
    if d >= 1 and n < 2:
        return []
    return [{w: 1} for w in lyndon_words(AT, tuple(mu)) if d == 0 or at_blocks(w) >= d]


def depth_basis_AT(d: int, mu: tuple, max_degree: int = MAX_DEGREE, method: str = "lyndon") -> SubspaceBasis:
    mu = tuple(mu)
    _check_bound(mu, max_degree)
    if method == "recursive":
        rows = depth_rows_recursive(d, mu)
    else:
        rows = depth_rows_lyndon(d, mu)
    return SubspaceBasis(AT, d, mu, rows)


def member_AT(x: LieElement, d: int) -> bool:
    """x in D^d L(A,T), componentwise."""
    if d <= 0 or not x:
        return True
    for w in x.coordinates():
        if len(w) < 2 or at_blocks(w) < d:
            return False
    return True


# ----------------------------------------------------------------- L(X0,X1)

def depth_basis_X(d: int, mu: tuple, max_degree: int = MAX_DEGREE) -> SubspaceBasis:
    mu = tuple(mu)
    _check_bound(mu, max_degree)
    rows = [{w: 1} for w in lyndon_words(X01, mu)] if mu[1] >= d else []
    return SubspaceBasis(X01, d, mu, rows)


def member_X(x: LieElement, d: int) -> bool:
    return all(b >= d for _, b in x.multidegrees())


def depth_membership(x: LieElement, d: int) -> bool:
    if x.alphabet == X01:
        return member_X(x, d)
    return member_AT(x, d)


# ------------------------------------------------------------- derivations

def derivation_depth(delta: Derivation, d: int) -> bool:
    """delta in D^d Der^0, i.e. delta(A) and delta(T) both lie in D^d.

    For derivations of negative W-weight the two memberships must agree
    (Pollack's lemma); disagreement raises.  In W-weight 0 the lemma has the
    exceptions eps_0 and the raising operator, which kill one generator.
    """
    if not is_der0(delta):
        raise NotDer0("derivation does not annihilate theta")
    in_a = member_AT(delta.image_A, d)
    in_t = member_AT(delta.image_T, d)
    if in_a != in_t and delta.dW < 0:
        raise PollackLemmaViolation(
            f"delta(A) in D^{d}: {in_a}, delta(T) in D^{d}: {in_t} for a derivation of shift {delta.shift}"
        )
    return in_a and in_t


# -------------------------------------------------------------- dimensions

def gr_depth_dim_formula(d: int, mu: tuple) -> int:
    """dim Gr^d_D L(A,T) at mu, as the bracket-length-d part of the free Lie
    algebra on one generator in each multidegree (i, j) with i, j >= 1."""
    a, t = mu
    if d == 0:
        return 1 if sum(mu) == 1 else 0
    if a < d or t < d:
        return 0
    g = gcd(gcd(a, t), d)
    total = 0
    for r in range(1, g + 1):
        if g % r == 0:
            k, ar, tr = d // r, a // r, t // r
            total += _mobius(r) * comb(ar - 1, k - 1) * comb(tr - 1, k - 1)
    assert total % d == 0
    return total // d


def gr_depth_dim(d: int, mu: tuple, method: str = "recursive") -> int:
    rows = depth_rows_recursive if method == "recursive" else depth_rows_lyndon
    return len(rows(d, mu)) - len(rows(d + 1, mu))


def convolution_check(m: int, max_degree: int = MAX_DEGREE) -> dict:
    """Compare dim Gr^W_{-m} with sum_{n+d=m} dim Gr^M_{-2n} Gr^d_D in L(X0,X1).

    W-weight of an (a, b)-monomial is -(a + 2b), M-weight is -2(a + b).
    """
    lhs = sum(witt_dim((a, (m - a) // 2)) for a in range(m + 1) if (m - a) % 2 == 0)
    rhs = 0
    terms = []
    for d in range(0, m + 1):
        n = m - d
        dim = 0
        for b in range(n + 1):
            mu = (n - b, b)
            if sum(mu) < 1:
                continue
            dim += depth_basis_X(d, mu, max_degree).dim - depth_basis_X(d + 1, mu, max_degree).dim
        if dim:
            terms.append({"n": n, "d": d, "dim": dim})
        rhs += dim
    return {"m": m, "gr_W": lhs, "convolution": rhs, "terms": terms, "ok": lhs == rhs}
