"""Finite graphs built from a Heuberger matrix.

The graph of an m x r matrix M is Cay(Z^m / H, {+-e_1, ..., +-e_m}) where H
is the column lattice of M.  When that group is finite we build the whole
graph; otherwise we build finite quotients (upper bounds on the chromatic
number) and balls around the identity (lower bounds).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd, lcm, prod
from typing import IO, Sequence

import numpy as np

from .intmat import IntMatrix, column_hnf, smith_normal_form, unit_vector

BALL_VERTEX_CAP = 20_000
QUOTIENT_VERTEX_CAP = 250_000


class BudgetExceeded(RuntimeError):
    """A construction or search ran past its configured budget."""


class CirculantError(ValueError):
    pass


class DisconnectedCirculantError(CirculantError):
    """gcd(a, b, n) != 1."""


class LoopedCirculantError(CirculantError):
    """n divides a or b."""


@dataclass(frozen=True)
class InfiniteQuotient:
    free_rank: int


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{d_1} x ... x Z_{d_k} together with the images of e_1..e_m.

    ``left`` maps Z^m onto the factor coordinates (a unimodular matrix from
    a Smith decomposition); ``left_inverse`` lifts elements back.
    """

    moduli: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    left: IntMatrix = field(repr=False)
    left_inverse: IntMatrix = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def exponent(self) -> int:
        return lcm(*self.moduli) if self.moduli else 1

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        w = self.left @ tuple(v)
        return tuple(x % d for x, d in zip(w, self.moduli))

    def lift(self, element: Sequence[int]) -> tuple[int, ...]:
        return self.left_inverse @ tuple(element)

    def index(self, element: Sequence[int]) -> int:
        idx = 0
        for x, d in zip(element, self.moduli):
            idx = idx * d + x % d
        return idx

    def element(self, index: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.moduli):
            index, x = divmod(index, d)
            out.append(x)
        return tuple(reversed(out))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.moduli))


def _inverse_unimodular(L: IntMatrix) -> IntMatrix:
    # columns of the inverse solve L x = e_i; L is unimodular so solutions are integral
    from .intmat import lattice_member

    n = L.nrows
    cols = [lattice_member(L, unit_vector(n, i)) for i in range(n)]
    return IntMatrix.from_columns(cols, n)


def _group_from_smith(M: IntMatrix) -> FiniteAbelianGroup | InfiniteQuotient:
    sf = smith_normal_form(M)
    m = M.nrows
    if sf.free_rank:
        return InfiniteQuotient(sf.free_rank)
    L = IntMatrix(sf.left.rows, m)
    moduli = sf.factors
    gens = tuple(tuple(L[t, i] % moduli[t] for t in range(m)) for i in range(m))
    return FiniteAbelianGroup(moduli, gens, L, _inverse_unimodular(L))


def quotient_group(M: IntMatrix) -> FiniteAbelianGroup | InfiniteQuotient:
    """Z^m / H as a finite group, or its free rank when infinite."""
    return _group_from_smith(M)


@dataclass(frozen=True)
class FiniteCayleyGraph:
    n: int
    neighbors: tuple[tuple[int, ...], ...]
    loops: tuple[bool, ...]
    generators: tuple[tuple[int, ...], ...]
    group: FiniteAbelianGroup | None = field(default=None, repr=False, compare=False)

    @property
    def has_loops(self) -> bool:
        return any(self.loops)

    def edges(self):
        for u, nbrs in enumerate(self.neighbors):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])


def cayley_graph(group: FiniteAbelianGroup, cap: int = QUOTIENT_VERTEX_CAP) -> FiniteCayleyGraph:
    n = group.order
    if n > cap:
        raise BudgetExceeded(f"quotient has {n} vertices (cap {cap})")
    moduli = np.array(group.moduli, dtype=np.int64)
    k = len(group.moduli)
    # row-major mixed radix: index = sum(x_t * weight_t)
    weights = np.ones(k, dtype=np.int64)
    for t in range(k - 2, -1, -1):
        weights[t] = weights[t + 1] * moduli[t + 1]
    idx = np.arange(n, dtype=np.int64)
    elems = (idx[:, None] // weights[None, :]) % moduli[None, :] if k else np.zeros((n, 0), np.int64)
    columns = []
    for g in group.generators:
        g = np.array(g, dtype=np.int64)
        for s in (1, -1):
            columns.append(((elems + s * g) % moduli) @ weights if k else np.zeros(n, np.int64))
    if columns:
        nb = np.stack(columns, axis=1)
        nb.sort(axis=1)
        self_hit = nb == idx[:, None]
        loops = self_hit.any(axis=1)
        keep = ~self_hit
        keep[:, 1:] &= nb[:, 1:] != nb[:, :-1]
        neighbors = tuple(
            tuple(v for v, k in zip(row, mask) if k) for row, mask in zip(nb.tolist(), keep.tolist())
        )
    else:
        loops = np.zeros(n, dtype=bool)
        neighbors = tuple(() for _ in range(n))
    return FiniteCayleyGraph(n, neighbors, tuple(bool(x) for x in loops), group.generators, group)


def full_graph(M: IntMatrix, cap: int = QUOTIENT_VERTEX_CAP) -> FiniteCayleyGraph:
    group = quotient_group(M)
    if isinstance(group, InfiniteQuotient):
        raise ValueError(f"Z^m/H is infinite (free rank {group.free_rank})")
    return cayley_graph(group, cap)


def finite_quotient_graph(M: IntMatrix, N: int, cap: int = QUOTIENT_VERTEX_CAP) -> FiniteCayleyGraph:
    """Graph of Z^m / (H + N Z^m); X maps homomorphically onto it."""
    if N < 2:
        raise ValueError("modulus must be at least 2")
    m = M.nrows
    extended = M.hstack(IntMatrix([[N * x for x in row] for row in IntMatrix.identity(m).rows], m))
    group = quotient_group(extended)
    assert isinstance(group, FiniteAbelianGroup)
    return cayley_graph(group, cap)


@dataclass(frozen=True)
class BallGraph:
    """Induced subgraph of X on cosets within distance ``radius`` of the identity."""

    radius: int
    vertices: tuple[tuple[int, ...], ...]
    distances: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]
    loops: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def has_loops(self) -> bool:
        return any(self.loops)

    def edges(self):
        for u, nbrs in enumerate(self.neighbors):
            for v in nbrs:
                if u < v:
                    yield u, v


def ball(M: IntMatrix, radius: int, cap: int = BALL_VERTEX_CAP) -> BallGraph:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    hb = column_hnf(M)
    m = M.nrows
    steps = []
    for i in range(m):
        e = unit_vector(m, i)
        steps.append(e)
        steps.append(tuple(-x for x in e))

    def shift(v, step):
        return hb.reduce([a + b for a, b in zip(v, step)])

    origin = hb.reduce((0,) * m)
    index = {origin: 0}
    verts = [origin]
    dist = [0]
    queue = deque([origin])
    while queue:
        v = queue.popleft()
        d = dist[index[v]]
        if d == radius:
            continue
        for step in steps:
            w = shift(v, step)
            if w not in index:
                if len(verts) >= cap:
                    raise BudgetExceeded(f"ball of radius {radius} exceeds {cap} vertices")
                index[w] = len(verts)
                verts.append(w)
                dist.append(d + 1)
                queue.append(w)
    neighbors = []
    loops = []
    for u, v in enumerate(verts):
        nbrs = set()
        loop = False
        for step in steps:
            w = index.get(shift(v, step))
            if w is None:
                continue
            if w == u:
                loop = True
            else:
                nbrs.add(w)
        neighbors.append(tuple(sorted(nbrs)))
        loops.append(loop)
    return BallGraph(radius, tuple(verts), tuple(dist), tuple(neighbors), tuple(loops))


def circulant_graph(n: int, a: int, b: int) -> FiniteCayleyGraph:
    """Cay(Z_|n|, {+-a, +-b}) for a valid Heuberger circulant."""
    if n == 0:
        raise CirculantError("n must be nonzero")
    if gcd(gcd(a, b), n) != 1:
        raise DisconnectedCirculantError(f"gcd({a}, {b}, {n}) != 1: graph is disconnected")
    if a % n == 0 or b % n == 0:
        raise LoopedCirculantError(f"{n} divides a generator: graph has loops")
    size = abs(n)
    L = IntMatrix([[1]])
    group = FiniteAbelianGroup((size,), ((a % size,), (b % size,)), L, L)
    return cayley_graph(group)


def graph_from_edges(n: int, edges) -> FiniteCayleyGraph:
    """Plain finite graph (no group structure) in the same container type."""
    adj = [set() for _ in range(n)]
    loops = [False] * n
    for u, v in edges:
        if u == v:
            loops[u] = True
        else:
            adj[u].add(v)
            adj[v].add(u)
    return FiniteCayleyGraph(n, tuple(tuple(sorted(s)) for s in adj), tuple(loops), ())


def edge_list_text(graph) -> str:
    """``n`` on the first line, then one ``u v`` pair per line (0-indexed, u <= v)."""
    lines = [str(graph.n)]
    for u in range(graph.n):
        if graph.loops[u]:
            lines.append(f"{u} {u}")
        lines.extend(f"{u} {v}" for v in graph.neighbors[u] if u < v)
    return "\n".join(lines) + "\n"


def write_edge_list(graph, fh: IO[str]) -> None:
    fh.write(edge_list_text(graph))


def read_edge_list(text: str) -> FiniteCayleyGraph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    n = int(lines[0][0])
    return graph_from_edges(n, [(int(u), int(v)) for u, v in lines[1:]])
