"""Monodromy weight filtrations of nilpotent endomorphisms, and relative
weight filtrations on filtered vector spaces.

Vectors live in Q^n as sparse dicts ``index -> coefficient``; subspaces are
RREF row lists (see ``linalg``), so equality of subspaces is list equality.
A matrix acts on column vectors: ``(N v)_i = sum_j N[i][j] v_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .linalg import (
    Echelon,
    contains_space,
    coordinates,
    dict_to_vec,
    identity,
    image,
    intersect,
    kernel,
    mat_mul,
    mat_vec,
    span_basis,
    subspace_sum,
)
from .scalars import as_rational, format_rational

MAX_RELATIVE_DIM = 12
# cap on the number of subspaces generated by the relative search
MAX_LATTICE = 600


class NotNilpotent(ValueError):
    pass


class NotWPreserving(ValueError):
    pass


class DimensionBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class LinearMap:
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_rational(x) for x in row) for row in self.matrix)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def zero(cls, n: int) -> "LinearMap":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: dict) -> dict:
        return mat_vec(self.matrix, v)

    def power(self, e: int) -> "LinearMap":
        out = identity(self.dim)
        for _ in range(e):
            out = mat_mul(out, self.matrix)
        return LinearMap(out)

    def image_of(self, space) -> list[dict]:
        return span_basis(self(v) for v in space)

    def nilpotency_index(self) -> int:
        """Least e with N^e = 0; raises NotNilpotent."""
        n = self.dim
        p = [list(r) for r in identity(n)]
        for e in range(n + 1):
            if not any(any(r) for r in p):
                return e
            p = mat_mul(p, self.matrix)
        raise NotNilpotent("matrix is not nilpotent")

    def to_json(self) -> list:
        return [[format_rational(x) for x in row] for row in self.matrix]


def full_space(n: int) -> list[dict]:
    return [{i: 1} for i in range(n)]


@dataclass
class Filtration:
    """Increasing filtration F_lo <= ... <= F_hi = V; F_k = 0 for k < lo."""

    dim: int
    lo: int
    spaces: list = field(default_factory=list)

    def __post_init__(self):
        self.spaces = [span_basis(s) for s in self.spaces]
        if not self.spaces:
            self.spaces = [full_space(self.dim)]

    @property
    def hi(self) -> int:
        return self.lo + len(self.spaces) - 1

    def __getitem__(self, k: int) -> list[dict]:
        if k < self.lo:
            return []
        if k > self.hi:
            return self.spaces[-1]
        return self.spaces[k - self.lo]

    def is_nested(self) -> bool:
        return all(contains_space(self.spaces[i + 1], self.spaces[i]) for i in range(len(self.spaces) - 1))

    def is_exhaustive(self) -> bool:
        return len(self.spaces[-1]) == self.dim

    def graded_dims(self) -> dict:
        out = {}
        for k in range(self.lo, self.hi + 1):
            g = len(self[k]) - len(self[k - 1])
            if g:
                out[k] = g
        return out

    def trimmed(self) -> "Filtration":
        """Canonical index range: lo = first nonzero step, hi = first full step."""
        ks = [k for k in range(self.lo, self.hi + 1) if self[k]]
        full = [k for k in range(self.lo, self.hi + 1) if len(self[k]) == self.dim]
        if not ks or not full:
            return Filtration(self.dim, self.lo, list(self.spaces))
        lo, hi = ks[0], full[0]
        return Filtration(self.dim, lo, [self[k] for k in range(lo, hi + 1)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Filtration) or other.dim != self.dim:
            return NotImplemented
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return all(self[k] == other[k] for k in range(lo - 1, hi + 2))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "lo": self.lo,
            "hi": self.hi,
            "steps": [
                {"index": k, "basis": [[format_rational(x) for x in dict_to_vec(r, self.dim)] for r in self[k]]}
                for k in range(self.lo, self.hi + 1)
            ],
        }

    @classmethod
    def from_json(cls, data, dim: int) -> "Filtration":
        """Accept ``[{"index": k, "basis": [[...], ...]}, ...]`` (or a dict
        with a ``steps`` key); indices missing in between repeat the previous step."""
        steps = data["steps"] if isinstance(data, dict) else data
        given = {}
        for s in steps:
            rows = []
            for r in s["basis"]:
                if len(r) != dim:
                    raise ValueError(f"basis row of length {len(r)} in a space of dimension {dim}")
                rows.append({i: as_rational(x) for i, x in enumerate(r) if as_rational(x)})
            given[int(s["index"])] = rows
        if not given:
            raise ValueError("empty filtration")
        lo, hi = min(given), max(given)
        spaces, cur = [], []
        for k in range(lo, hi + 1):
            cur = given.get(k, cur)
            spaces.append(cur)
        f = cls(dim, lo, spaces)
        if not f.is_exhaustive():
            raise ValueError("the top step of the filtration must be the whole space")
        return f


def recenter(F: Filtration, m: int) -> Filtration:
    """M_k = F_{k - m}."""
    return Filtration(F.dim, F.lo + m, list(F.spaces))


# ------------------------------------------------------------ W(N) of a map

def weight_filtration(N: LinearMap) -> Filtration:
    """W_k = sum_{j >= max(0, -k)} ker N^(j+k+1) cap im N^j, centred at 0."""
    e = N.nilpotency_index()
    n = N.dim
    if e <= 1:
        F = Filtration(n, 0, [full_space(n)])
    else:
        m = e - 1  # N^(m+1) = 0, N^m != 0
        kers = [kernel(N.power(i).matrix) if i else [] for i in range(2 * m + 2)]
        ims = [image(N.power(j).matrix) for j in range(m + 1)]
        spaces = []
        for k in range(-m, m + 1):
            parts = []
            for j in range(max(0, -k), m + 1):
                i = j + k + 1
                ker = kers[i] if i <= 2 * m + 1 else full_space(n)
                parts.append(intersect(ker, ims[j]))
            spaces.append(subspace_sum(*parts))
        F = Filtration(n, -m, spaces).trimmed()
    if not verify_weight_filtration(N, F):
        raise AssertionError("constructed filtration fails verification")
    return F


def _gr_iso(Nk: LinearMap, top: list, below_top: list, low: list, below_low: list) -> bool:
    """Is Nk : top/below_top -> low/below_low an isomorphism?"""
    d_top = len(top) - len(below_top)
    d_low = len(low) - len(below_low)
    if d_top != d_low:
        return False
    e = Echelon()
    for v in below_low:
        e.add(v)
    base = len(e)
    for v in top:
        e.add(Nk(v))
    return len(e) - base == d_top


def verify_weight_filtration(N: LinearMap, F: Filtration) -> bool:
    if F.dim != N.dim or not F.is_nested() or not F.is_exhaustive():
        return False
    lo, hi = F.lo, F.hi
    for k in range(lo, hi + 1):
        if not contains_space(F[k - 2], (N(v) for v in F[k])):
            return False
    r = max(abs(lo), abs(hi)) + 1
    for k in range(0, r + 1):
        if not _gr_iso(N.power(k), F[k], F[k - 1], F[-k], F[-k - 1]):
            return False
    return True


# ------------------------------------------------------- relative version

@dataclass
class RelativeCheck:
    ok: bool
    clause: int | None = None
    index: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "clause": self.clause, "index": self.index, "detail": self.detail}


def preserves(N: LinearMap, W: Filtration) -> bool:
    return all(contains_space(W[k], (N(v) for v in W[k])) for k in range(W.lo, W.hi + 1))


@dataclass
class GradedPiece:
    """Gr^W_m V with quotient coordinates over a complement of W_{m-1}."""

    m: int
    below: list
    complement: list

    @property
    def dim(self) -> int:
        return len(self.complement)

    def coords(self, v: dict) -> dict:
        c = coordinates(v, self.below + self.complement)
        nb = len(self.below)
        return {i - nb: x for i, x in enumerate(c) if i >= nb and x}

    def induced(self, N: LinearMap) -> LinearMap:
        cols = [self.coords(N(v)) for v in self.complement]
        return LinearMap(tuple(tuple(cols[j].get(i, 0) for j in range(self.dim)) for i in range(self.dim)))

    def project(self, space) -> list[dict]:
        return span_basis(self.coords(v) for v in space)


def graded_piece(W: Filtration, m: int) -> GradedPiece:
    e = Echelon()
    below = list(W[m - 1])
    for v in below:
        e.add(v)
    comp = [v for v in W[m] if e.add(v)]
    return GradedPiece(m, below, comp)


def _target(W: Filtration, N: LinearMap) -> dict:
    """m -> (piece, recentred weight filtration of Gr^W_m N) for nonzero pieces."""
    out = {}
    for m in range(W.lo, W.hi + 1):
        g = graded_piece(W, m)
        if g.dim:
            out[m] = (g, recenter(weight_filtration(g.induced(N)), m))
    return out


def _clause2_at(W: Filtration, targets: dict, space: list, k: int) -> int | None:
    """First m where the filtration induced by ``space`` (as M_k) differs."""
    for m, (g, Mm) in targets.items():
        induced = g.project(intersect(space, W[m]))
        if induced != Mm[k]:
            return m
    return None


def verify_relative(W: Filtration, N: LinearMap, M: Filtration) -> RelativeCheck:
    if not preserves(N, W):
        raise NotWPreserving("N does not preserve W")
    if M.dim != N.dim or not M.is_nested():
        return RelativeCheck(False, None, None, "M is not a nested filtration")
    if not M.is_exhaustive():
        return RelativeCheck(False, None, None, "M is not exhaustive")
    for k in range(M.lo, M.hi + 1):
        if not contains_space(M[k - 2], (N(v) for v in M[k])):
            return RelativeCheck(False, 1, k, f"N M_{k} is not contained in M_{k - 2}")
    targets = _target(W, N)
    lo = min([M.lo] + [t.lo for _, t in targets.values()]) - 1
    hi = max([M.hi] + [t.hi for _, t in targets.values()]) + 1
    for k in range(lo, hi + 1):
        m = _clause2_at(W, targets, M[k], k)
        if m is not None:
            return RelativeCheck(False, 2, k, f"induced filtration on Gr^W_{m} differs at index {k}")
    return RelativeCheck(True)


@dataclass
class NotFound:
    certified: bool
    summary: dict

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"found": False, "certified_nonexistence": self.certified, **self.summary}


def gr_trivial(W: Filtration, N: LinearMap) -> bool:
    """N W_k in W_{k-1} for every k, i.e. every Gr^W_m N vanishes."""
    return all(contains_space(W[k - 1], (N(v) for v in W[k])) for k in range(W.lo, W.hi + 1))


def _lattice(W: Filtration, N: LinearMap) -> list:
    n = N.dim
    e = N.nilpotency_index()
    kers = [kernel(N.power(i).matrix) if i else [] for i in range(e + 1)]
    ims = [image(N.power(i).matrix) for i in range(e + 1)]
    seen: dict = {}

    def put(s):
        key = tuple(tuple(sorted(r.items())) for r in s)
        if key not in seen:
            seen[key] = s

    put([])
    put(full_space(n))
    for j in range(W.lo - 1, W.hi + 1):
        for i in range(e + 1):
            put(intersect(kers[i], W[j]) if i else [])
            put(subspace_sum(ims[i], W[j]))
            for i2 in range(e + 1):
                put(intersect(intersect(kers[i], ims[i2]), W[j]) if i else [])
    # one round of pairwise sums and intersections
    base = list(seen.values())
    for a, b in product(base, repeat=2):
        if len(seen) >= MAX_LATTICE:
            break
        put(subspace_sum(a, b))
        put(intersect(a, b))
    return list(seen.values())


def relative_candidate(W: Filtration, N: LinearMap, max_dim: int = MAX_RELATIVE_DIM):
    """A relative weight filtration of N on (V, W), or NotFound."""
    if N.dim > max_dim:
        raise DimensionBoundExceeded(f"dimension {N.dim} exceeds bound {max_dim}")
    if not preserves(N, W):
        raise NotWPreserving("N does not preserve W")
    if gr_trivial(W, N):
        # the only filtration inducing the trivial one on every Gr^W_m is W
        chk = verify_relative(W, N, W)
        if chk:
            return W.trimmed()
        return NotFound(True, {"reason": "Gr-trivial: the unique candidate M = W fails", "check": chk.to_json()})
    targets = _target(W, N)
    lo = min(t.lo for _, t in targets.values()) - 1
    hi = max(t.hi for _, t in targets.values())
    lattice = _lattice(W, N)
    options = {k: [s for s in lattice if _clause2_at(W, targets, s, k) is None] for k in range(lo, hi + 1)}
    summary = {"lattice_size": len(lattice), "options": {str(k): len(v) for k, v in options.items()}}
    if any(not v for v in options.values()):
        return NotFound(False, summary)

    ks = list(range(lo, hi + 1))

    def search(i: int, chosen: list):
        if i == len(ks):
            M = Filtration(N.dim, lo, chosen + [full_space(N.dim)])
            return M if verify_relative(W, N, M) else None
        for s in options[ks[i]]:
            if chosen and not contains_space(s, chosen[-1]):
                continue
            if i >= 2 and not contains_space(chosen[i - 2], (N(v) for v in s)):
                continue
            if i < 2 and any(N(v) for v in s) and ks[i] - 2 < lo:
                continue
            got = search(i + 1, chosen + [s])
            if got is not None:
                return got
        return None

    M = search(0, [])
    if M is None:
        return NotFound(False, summary)
    return M.trimmed()


# ------------------------------------------------------------------ examples

def sym_power_example(n: int) -> tuple[LinearMap, list[str]]:
    """N = a d/dw on S^n H, basis a^(n-j) w^j for j = 0..n."""
    m = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(1, n + 1):
        # a d/dw (a^(n-j) w^j) = j a^(n-j+1) w^(j-1)
        m[j - 1][j] = j
    names = [f"a^{n - j} w^{j}" for j in range(n + 1)]
    return LinearMap(tuple(tuple(r) for r in m)), names


def monomial_weights(F: Filtration) -> dict:
    """Weight of each basis vector e_i, when F is split by the coordinate basis."""
    out = {}
    for i in range(F.dim):
        for k in range(F.lo, F.hi + 1):
            if contains_space(F[k], [{i: 1}]):
                out[i] = k
                break
    return out


def genus1_counterexample() -> tuple[Filtration, LinearMap]:
    """V = H_1(E, {P, Q}) with basis (alpha, beta, gamma); W_{-1} = H_1(E)."""
    W = Filtration(3, -1, [[{0: 1}, {1: 1}], full_space(3)])
    N = LinearMap(((0, 0, 1), (0, 0, 0), (0, 0, 0)))  # N gamma = alpha
    return W, N


def gr_trivial_example() -> tuple[Filtration, LinearMap]:
    """W jumps at -2 and 0 and N maps W_0 into W_{-2}."""
    W = Filtration(3, -2, [[{0: 1}, {1: 1}], [{0: 1}, {1: 1}], full_space(3)])
    N = LinearMap(((0, 0, 1), (0, 0, 1), (0, 0, 0)))
    return W, N


def direct_sum(a: tuple, b: tuple) -> tuple[Filtration, LinearMap]:
    (Wa, Na), (Wb, Nb) = a, b
    n, p = Na.dim, Nb.dim
    lo, hi = min(Wa.lo, Wb.lo), max(Wa.hi, Wb.hi)
    spaces = [list(Wa[k]) + [{i + n: c for i, c in r.items()} for r in Wb[k]] for k in range(lo, hi + 1)]
    m = [[0] * (n + p) for _ in range(n + p)]
    for i in range(n):
        for j in range(n):
            m[i][j] = Na.matrix[i][j]
    for i in range(p):
        for j in range(p):
            m[n + i][n + j] = Nb.matrix[i][j]
    return Filtration(n + p, lo, spaces), LinearMap(tuple(tuple(r) for r in m))
