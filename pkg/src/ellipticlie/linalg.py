"""Sparse exact linear algebra over the rationals.

Vectors are dicts ``key -> coefficient`` with mutually comparable keys
(words, tuples or integers).  Pivots are always the smallest key of a row,
so elimination proceeds in increasing key order and is deterministic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

from .kernels import add_scaled

Vector = dict


class NotInSpan(ValueError):
    """Raised when a vector is not in the span of a given family."""


def _unit(c):
    if c == 1 or c == -1:
        return int(c)
    return Fraction(1) / c


class Echelon:
    """Incremental row echelon form.

    Each stored row has pivot equal to its minimal key with coefficient 1.
    With ``track=True`` every row also carries the combination of inserted
    vectors (by insertion index) that produced it.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}
        self.combos: dict = {}
        self.track = track
        self._count = 0
        self.relations: list[dict] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector, combo: dict | None = None) -> tuple[dict, dict | None]:
        rem = {k: c for k, c in v.items() if c}
        heap = list(rem)
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            k = heapq.heappop(heap)
            c = rem.get(k)
            if not c or k not in rows:
                continue
            for u, x in rows[k].items():
                s = rem.get(u, 0) - c * x
                if s:
                    if u not in rem:
                        heapq.heappush(heap, u)
                    rem[u] = s
                else:
                    rem.pop(u, None)
            if combo is not None:
                add_scaled(combo, self.combos[k], -c)
        return rem, combo

    def add(self, v: Vector) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        idx = self._count
        self._count += 1
        combo = {idx: 1} if self.track else None
        rem, combo = self.reduce(v, combo)
        if not rem:
            if self.track:
                self.relations.append(combo)
            return False
        p = min(rem)
        inv = _unit(rem[p])
        if inv != 1:
            rem = {u: x * inv for u, x in rem.items()}
            if combo is not None:
                combo = {u: x * inv for u, x in combo.items()}
        self.rows[p] = rem
        if self.track:
            self.combos[p] = combo
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]

    def pivots(self) -> list:
        return sorted(self.rows)

    def rref(self) -> list[dict]:
        """Fully reduced rows sorted by pivot (canonical for the span)."""
        out: dict = {}
        for p in sorted(self.rows, reverse=True):
            row = dict(self.rows[p])
            for q in [q for q in row if q != p and q in out]:
                c = row.get(q)
                if c:
                    add_scaled(row, out[q], -c)
            out[p] = row
        return [out[p] for p in sorted(out)]


def span_basis(vectors: Iterable[Vector]) -> list[dict]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rref()


def rank(vectors: Iterable[Vector]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def linear_relations(vectors: Sequence[Vector]) -> list[dict]:
    """Basis (in RREF over indices) of ``{x : sum_i x_i v_i = 0}``."""
    e = Echelon(track=True)
    for v in vectors:
        e.add(v)
    return span_basis(e.relations)


def coordinates(x: Vector, span: Sequence[Vector]) -> list:
    """Coefficients ``c`` with ``sum c_i span_i = x``; raise NotInSpan."""
    e = Echelon(track=True)
    for v in span:
        e.add(v)
    rem, combo = e.reduce(x, {})
    if rem:
        raise NotInSpan("vector is not in the span")
    out = [0] * len(span)
    for i, c in combo.items():
        out[i] = -c
    return out


def in_span(x: Vector, span: Iterable[Vector]) -> bool:
    e = Echelon()
    for v in span:
        e.add(v)
    return e.contains(x)


# Dense helpers on coordinate space Q^n; subspaces are RREF row lists.

def vec_to_dict(v: Sequence) -> dict:
    return {i: c for i, c in enumerate(v) if c}


def dict_to_vec(v: dict, n: int) -> list:
    out = [Fraction(0)] * n
    for i, c in v.items():
        out[i] = Fraction(c)
    return out


def mat_vec(m: Sequence[Sequence], v: dict) -> dict:
    out: dict = {}
    for j, c in v.items():
        for i in range(len(m)):
            x = m[i][j]
            if x:
                s = out.get(i, 0) + x * c
                if s:
                    out[i] = s
                else:
                    del out[i]
    return out


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_pow(m: Sequence[Sequence], e: int) -> list[list]:
    out = identity(len(m))
    for _ in range(e):
        out = mat_mul(out, m)
    return out


def image(m: Sequence[Sequence], basis: Iterable[dict] | None = None) -> list[dict]:
    n = len(m)
    if basis is None:
        basis = [{j: 1} for j in range(n)]
    return span_basis(mat_vec(m, v) for v in basis)


def kernel(m: Sequence[Sequence]) -> list[dict]:
    n = len(m[0]) if m else 0
    cols = [vec_to_dict([m[i][j] for i in range(len(m))]) for j in range(n)]
    return linear_relations(cols)


def subspace_sum(*spaces: Iterable[dict]) -> list[dict]:
    return span_basis(v for s in spaces for v in s)


def intersect(u: Sequence[dict], v: Sequence[dict]) -> list[dict]:
    if not u or not v:
        return []
    fam = list(u) + [{k: -c for k, c in w.items()} for w in v]
    out = []
    for rel in linear_relations(fam):
        x: dict = {}
        for i, c in rel.items():
            if i < len(u):
                add_scaled(x, u[i], c)
        out.append(x)
    return span_basis(out)


def contains_space(big: Sequence[dict], small: Iterable[dict]) -> bool:
    e = Echelon()
    for v in big:
        e.add(v)
    return all(e.contains(v) for v in small)


def same_space(u: Sequence[dict], v: Sequence[dict]) -> bool:
    return span_basis(u) == span_basis(v)
