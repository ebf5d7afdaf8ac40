"""Independent ground truth: exact coloring and sandwich verification.

A ball around the identity is an induced subgraph of X, so its chromatic
number is a lower bound.  A finite quotient receives a homomorphism from X,
so its chromatic number is an upper bound.  When both meet at the claimed
value the claim is confirmed.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import chromatic as C
from .cayley import (
    BALL_VERTEX_CAP,
    QUOTIENT_VERTEX_CAP,
    BudgetExceeded,
    FiniteAbelianGroup,
    ball,
    cayley_graph,
    finite_quotient_graph,
    quotient_group,
)
from .intmat import (
    IntMatrix,
    column_hnf,
    delete_zero_rows,
    drop_dependent_columns,
    gcd_all,
    has_loops,
    is_bipartite,
    is_signed_permutation,
    zero_rows,
)

DEFAULT_BUDGET_NODES = 10**7


def default_budget() -> int:
    raw = os.environ.get("CAYLEY_CHROMA_BUDGET_NODES")
    return int(raw) if raw else DEFAULT_BUDGET_NODES


# --------------------------------------------------------------------------
# Exact coloring


@dataclass(frozen=True)
class ColoringAssignment:
    colors: tuple[int, ...]
    k: int


def is_proper(graph, colors: Sequence[int]) -> bool:
    if len(colors) != graph.n or any(graph.loops):
        return False
    return all(colors[u] != colors[v] for u, nbrs in enumerate(graph.neighbors) for v in nbrs)


def _greedy_clique(neighbors) -> list[int]:
    n = len(neighbors)
    start = max(range(n), key=lambda v: (len(neighbors[v]), -v))
    clique = [start]
    members = set(neighbors[start])
    for w in sorted(neighbors[start], key=lambda v: (-len(neighbors[v]), v)):
        if w in members:
            clique.append(w)
            members &= set(neighbors[w])
    return clique


def _odd_cycle_free(neighbors) -> bool:
    n = len(neighbors)
    side = [-1] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in neighbors[u]:
                if side[v] < 0:
                    side[v] = side[u] ^ 1
                    stack.append(v)
                elif side[v] == side[u]:
                    return False
    return True


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0


def _k_coloring(neighbors, k: int, budget: _Budget) -> list[int] | None:
    """DSATUR backtracking for a proper k-coloring; None if none exists."""
    n = len(neighbors)
    color = [-1] * n
    seen = [[0] * k for _ in range(n)]
    sat = [0] * n
    used = [0] * k
    heap = [(0, v) for v in range(n)]  # (-saturation, index): lowest index wins ties
    push, pop = heapq.heappush, heapq.heappop

    def select():
        while heap:
            s, v = pop(heap)
            if color[v] < 0 and -s == sat[v]:
                return v
        return -1

    def assign(v, c):
        color[v] = c
        used[c] += 1
        for w in neighbors[v]:
            cnt = seen[w]
            if cnt[c] == 0:
                sat[w] += 1
                if color[w] < 0:
                    push(heap, (-sat[w], w))
            cnt[c] += 1

    def unassign(v):
        c = color[v]
        color[v] = -1
        used[c] -= 1
        for w in neighbors[v]:
            cnt = seen[w]
            cnt[c] -= 1
            if cnt[c] == 0:
                sat[w] -= 1
                if color[w] < 0:
                    push(heap, (-sat[w], w))

    v = select()
    if v < 0:
        return color
    stack = [[v, 0]]
    while stack:
        frame = stack[-1]
        v = frame[0]
        if color[v] >= 0:
            unassign(v)
        ncolors = 0
        while ncolors < k and used[ncolors]:
            ncolors += 1
        limit = min(k, ncolors + 1)
        c = frame[1]
        cnt = seen[v]
        while c < limit and cnt[c]:
            c += 1
        if c >= limit:
            stack.pop()
            push(heap, (-sat[v], v))
            continue
        frame[1] = c + 1
        budget.used += 1
        if budget.used > budget.limit:
            raise BudgetExceeded(f"exact coloring exceeded {budget.limit} search nodes")
        assign(v, c)
        w = select()
        if w < 0:
            return color
        stack.append([w, 0])
    return None


def _clique_and_parity_bound(nb) -> int:
    if not any(nb):
        return 1
    lower = len(_greedy_clique(nb))
    if lower < 3 and not _odd_cycle_free(nb):
        lower = 3
    return lower


def find_coloring(graph, k: int, budget: int | None = None) -> ColoringAssignment | None:
    """A proper coloring with at most k colors, or None if none exists."""
    if any(graph.loops) or k < 1:
        return None
    tracker = _Budget(default_budget() if budget is None else budget)
    colors = _k_coloring(graph.neighbors, k, tracker)
    if colors is None:
        return None
    assignment = ColoringAssignment(tuple(colors), max(colors, default=-1) + 1)
    assert is_proper(graph, assignment.colors)
    return assignment


def color_exactly(graph, budget: int | None = None, max_colors: int | None = None) -> ColoringAssignment | None:
    """Optimal coloring; None when the graph has loops or needs more than ``max_colors``."""
    if any(graph.loops):
        return None
    nb = graph.neighbors
    if not nb:
        return ColoringAssignment((), 0)
    tracker = _Budget(default_budget() if budget is None else budget)
    k = _clique_and_parity_bound(nb)
    while max_colors is None or k <= max_colors:
        colors = _k_coloring(nb, k, tracker)
        if colors is not None:
            assignment = ColoringAssignment(tuple(colors), k)
            assert is_proper(graph, assignment.colors)
            return assignment
        k += 1
    return None


def exact_chromatic(graph, budget: int | None = None) -> float:
    """Chromatic number, ``math.inf`` for graphs with loops."""
    a = color_exactly(graph, budget)
    return math.inf if a is None else a.k


def brute_force_chromatic(graph) -> float:
    """Smallest k admitting a proper coloring, by enumerating all of them.

    Colorings are enumerated up to renaming of colors (vertex v may only use
    a color at most one above the largest used by vertices 0..v-1), and a
    prefix is dropped as soon as it colors an edge monochromatically.
    Meant for graphs with at most ~10 vertices.
    """
    if any(graph.loops):
        return math.inf
    n = graph.n
    if n == 0:
        return 0
    earlier = [[u for u in graph.neighbors[v] if u < v] for v in range(n)]
    for k in range(1, n + 1):
        rows = np.zeros((1, 1), dtype=np.int8)
        top = np.zeros(1, dtype=np.int8)
        for v in range(1, n):
            base = np.repeat(rows, k, axis=0)
            c = np.tile(np.arange(k, dtype=np.int8), len(rows))
            prev_top = np.repeat(top, k)
            keep = c <= prev_top + 1
            for u in earlier[v]:
                keep &= base[:, u] != c
            rows = np.hstack([base[keep], c[keep, None]])
            top = np.maximum(prev_top[keep], c[keep])
            if not len(rows):
                break
        if len(rows):
            return k
    return n


# --------------------------------------------------------------------------
# Bounds


@dataclass(frozen=True)
class SandwichConfig:
    radii: tuple[int, ...] = (2, 3, 4, 5)
    moduli: tuple[int, ...] = tuple(range(2, 13))
    budget_nodes: int = field(default_factory=default_budget)
    ball_cap: int = BALL_VERTEX_CAP
    quotient_cap: int = QUOTIENT_VERTEX_CAP


@dataclass(frozen=True)
class LowerBound:
    """``kind`` is 'ball', 'parity', 'loop' or 'trivial'."""

    value: float
    kind: str
    radius: int | None = None
    ball_vertices: int | None = None


@dataclass(frozen=True)
class UpperBound:
    """``modulus`` is None when the whole (finite) graph was colored."""

    value: int
    modulus: int | None
    coloring: ColoringAssignment = field(repr=False)
    vertices: int = 0


def lower_bound(M: IntMatrix, radii: Sequence[int] = (2, 3, 4, 5), config: SandwichConfig | None = None) -> LowerBound:
    cfg = config or SandwichConfig()
    best = LowerBound(1, "trivial")
    if not is_bipartite(M):
        best = LowerBound(3, "parity")
    for R in sorted(radii):
        try:
            g = ball(M, R, cfg.ball_cap)
            value = exact_chromatic(g, cfg.budget_nodes)
        except BudgetExceeded:
            break
        kind = "loop" if value == math.inf else "ball"
        if value > best.value or (value == best.value and best.kind != "parity" and kind != best.kind):
            best = LowerBound(value, kind, R, g.n)
        if value == math.inf:
            break
    return best


def _quotient_candidates(M: IntMatrix, moduli, cfg: SandwichConfig):
    group = quotient_group(M)
    if isinstance(group, FiniteAbelianGroup):
        yield None, lambda: cayley_graph(group, cfg.quotient_cap)
    for N in moduli:
        yield N, lambda N=N: finite_quotient_graph(M, N, cfg.quotient_cap)


def upper_bound(
    M: IntMatrix,
    moduli: Sequence[int] = tuple(range(2, 13)),
    config: SandwichConfig | None = None,
    stop_at: int = 0,
) -> UpperBound | None:
    """Best coloring over the tried quotients (the whole graph first when finite).

    With ``stop_at`` set, every quotient is first tried for a coloring with
    exactly that many colors and the search ends at the first success.
    Quotients whose search runs out of budget are skipped.
    """
    cfg = config or SandwichConfig()
    graphs = []
    for N, build in _quotient_candidates(M, moduli, cfg):
        try:
            g = build()
        except BudgetExceeded:
            continue
        if not g.has_loops:
            graphs.append((N, g))
    if stop_at >= 1:
        for N, g in graphs:
            try:
                a = find_coloring(g, stop_at, cfg.budget_nodes)
            except BudgetExceeded:
                continue
            if a is not None:
                return UpperBound(a.k, N, a, g.n)
    best = None
    for N, g in graphs:
        limit = None if best is None else best.value - 1
        try:
            a = color_exactly(g, cfg.budget_nodes, limit)
        except BudgetExceeded:
            continue
        if a is not None:
            best = UpperBound(a.k, N, a, g.n)
        if N is None and a is not None:
            break
    return best


# --------------------------------------------------------------------------
# Sandwich


@dataclass(frozen=True)
class SandwichReport:
    """``status`` is 'confirmed', 'bounds', 'loops-confirmed' or 'budget-exceeded'."""

    status: str
    claimed: float | None
    lower: LowerBound | None = None
    upper: UpperBound | None = None
    contradiction: str | None = None

    def __str__(self):
        if self.status == "confirmed":
            return f"Confirmed({self.claimed})"
        if self.status == "loops-confirmed":
            return "LoopsConfirmed"
        lo = "-" if self.lower is None else self.lower.value
        hi = "-" if self.upper is None else self.upper.value
        if self.status == "budget-exceeded":
            return f"BudgetExceeded({lo}, {hi})"
        return f"Bounds({lo}, {hi})"


def sandwich_verify(M: IntMatrix, claimed, config: SandwichConfig | None = None) -> SandwichReport:
    cfg = config or SandwichConfig()
    if isinstance(claimed, C.Uncolorable):
        if claimed.witness.check(M):
            return SandwichReport("loops-confirmed", math.inf)
        lo = lower_bound(M, cfg.radii, cfg)
        return SandwichReport("bounds", math.inf, lo, None, "loop witness does not reproduce a unit vector")
    k = claimed.value if isinstance(claimed, C.Chi) else None
    lo = lower_bound(M, cfg.radii, cfg)
    target = k if k is not None else (lo.value if lo.value != math.inf else 0)
    hi = upper_bound(M, cfg.moduli, cfg, stop_at=target)
    problem = None
    if k is not None:
        if lo.value > k:
            problem = f"lower bound {lo.value} exceeds claimed {k}"
        elif hi is not None and hi.value < k:
            problem = f"upper bound {hi.value} (modulus {hi.modulus}) is below claimed {k}"
    if lo is not None and hi is not None and lo.value > hi.value:
        problem = problem or f"lower bound {lo.value} exceeds upper bound {hi.value}"
    if k is not None and problem is None and hi is not None and lo.value == hi.value == k:
        return SandwichReport("confirmed", k, lo, hi)
    status = "budget-exceeded" if hi is None and lo.kind in ("trivial", "parity") and lo.value != k else "bounds"
    return SandwichReport(status, k, lo, hi, problem)


# --------------------------------------------------------------------------
# Certificate re-checking


def _perm_ok(w, size) -> bool:
    return w.P.shape == (size, size) and is_signed_permutation(w.P)


def _unimodular_ok(w, size) -> bool:
    return w.U.shape == (size, size) and abs(w.U.determinant()) == 1


def _check_certificate(M: IntMatrix, k: int, cert) -> bool:
    m, r = M.shape
    if isinstance(cert, C.ZeroRowReduction):
        deleted = tuple(zero_rows(M))
        if not deleted or deleted != cert.deleted_rows or len(deleted) == m:
            return False
        return _check_certificate(delete_zero_rows(M), k, cert.inner)
    if isinstance(cert, C.DependentColumnReduction):
        N = drop_dependent_columns(M)
        if N.ncols >= r or N != cert.reduced:
            return False
        return _check_certificate(N, k, cert.inner)
    if isinstance(cert, C.Bipartite):
        sums = tuple(sum(col) for col in M.columns())
        return k == 2 and sums == cert.column_sums and all(s % 2 == 0 for s in sums)
    if isinstance(cert, C.TomatoCage):
        if r != 1:
            return False
        col = M.column(0)
        if not any(col) or sorted(abs(x) for x in col) == [0] * (m - 1) + [1]:
            return False
        odd = sum(x % 2 for x in col)
        return odd == cert.odd_entries and k == (3 if odd % 2 else 2)
    if isinstance(cert, C.OneRowGcd):
        e = gcd_all(M.row(0)) if m == 1 else 0
        return e == cert.e and e > 1 and k == (2 if e % 2 == 0 else 3)
    if isinstance(cert, C.CirculantCase):
        return _check_circulant(cert, k)
    if isinstance(cert, C.TwoByTwoCase):
        return _check_two_by_two(M, k, cert)
    if isinstance(cert, C.LShaped):
        try:
            case = C.l_shaped_case(M)
        except C.PreconditionError:
            return False
        return case == cert.case and k == {2: 2, 3: 4, 4: 3}.get(case)
    if isinstance(cert, C.ThreeByTwoCase):
        return _check_three_by_two(M, k, cert)
    if isinstance(cert, C.FourByTwo):
        if M.shape != (4, 2) or not (_perm_ok(cert.row_witness, 4) and _unimodular_ok(cert.col_witness, 2)):
            return False
        target = IntMatrix([[1, cert.a], [1, cert.b], [1, cert.c], [0, 1]])
        if cert.row_witness.P @ M @ cert.col_witness.U != target:
            return False
        return k == 4 and (cert.a + cert.b + cert.c) % 3 == 0 and _generic_ok(M)
    if isinstance(cert, C.FourByTwoNegative):
        if M.shape != (4, 2) or not _generic_ok(M):
            return False
        witness, _ = C.four_by_two_search(M)
        return k == 3 and witness is None
    if isinstance(cert, C.MainTheorem):
        return r == 2 and m >= 5 and m == cert.m and k == 3 and _generic_ok(M)
    return False


def _generic_ok(M: IntMatrix) -> bool:
    return not zero_rows(M) and has_loops(M) is None and not is_bipartite(M)


def _check_circulant(cert, k) -> bool:
    p = cert.params
    if p.violation():
        return False
    n, a, b = p.n, p.a, p.b
    N = abs(n)
    conditions = [
        (a % 2 == 1 and b % 2 == 1 and n % 2 == 0, 2),
        (N == 5 and (a % 5 in ((2 * b) % 5, (-2 * b) % 5)), 5),
        (N == 13 and (a % 13 in ((5 * b) % 13, (-5 * b) % 13)), 4),
        (N != 5 and n % 3 != 0 and (a % N in ((2 * b) % N, (-2 * b) % N) or b % N in ((2 * a) % N, (-2 * a) % N)), 4),
        (True, 3),
    ]
    first = next(i for i, (cond, _) in enumerate(conditions) if cond)
    return first + 1 == cert.case and conditions[first][1] == k


def _check_two_by_two(M, k, cert) -> bool:
    if M.shape != (2, 2) or not (_perm_ok(cert.row_witness, 2) and _unimodular_ok(cert.col_witness, 2)):
        return False
    T = cert.triangular
    if cert.row_witness.P @ M @ cert.col_witness.U != T:
        return False
    y11, y12, y21, y22 = T[0, 0], T[0, 1], T[1, 0], T[1, 1]
    if y12 != 0 or y11 < 0 or y22 < 0:
        return False
    e = gcd_all((y11, y21, y22))
    loops = y22 == 1 or (y11 == 1 and (y21 % y22 == 0 if y22 else y21 == 0)) or (y11 == 0 and math.gcd(y21, y22) == 1)
    parity = (y11 + y21) % 2 == 0 and y22 % 2 == 0
    three = y11 == 0 or y22 == 0 or e > 1 or (y21 % y22 == 0 if y22 else y21 == 0)
    if loops:
        return False
    if cert.case == 2:
        return parity and k == 2
    if cert.case == 3:
        return not parity and three and k == 3
    if cert.case != 4 or parity or three or cert.q is None or cert.circulant is None:
        return False
    if math.gcd(y11, y21 + cert.q * y22) != 1:
        return False
    p = cert.circulant.params
    if (p.n, p.a, p.b) != (y11 * y22, -y21 - cert.q * y22, y11):
        return False
    return _check_circulant(cert.circulant, k)


def _check_three_by_two(M, k, cert) -> bool:
    if M.shape != (3, 2) or not (_perm_ok(cert.row_witness, 3) and _unimodular_ok(cert.col_witness, 2)):
        return False
    Y = cert.mhnf
    if cert.row_witness.P @ M @ cert.col_witness.U != Y or not C.is_mhnf(Y):
        return False
    if Y.column(0) == (1, 0, 0) or Y.column(1) == (0, 0, 1):
        return False
    parity = sum(Y.column(0)) % 2 == 0 and (Y[1, 1] + Y[2, 1]) % 2 == 0
    if cert.case == 2:
        return parity and k == 2
    if parity:
        return False
    if cert.case == 3:
        params = dict(cert.params)
        if cert.family in (1, 2):
            inst = C.exceptional_instance(cert.family, k=params["k"], sign=params["sign"])
        elif cert.family in (3, 4):
            inst = C.exceptional_instance(cert.family, k=params["k"])
        elif cert.family == 5:
            inst = C.exceptional_instance(5, b=params["b"])
        elif cert.family == 6:
            if params["a"] % 3 == 0 or params["k"] < 1:
                return False
            inst = C.exceptional_instance(6, a=params["a"], k=params["k"])
        else:
            return False
        if cert.family != 5 and params["k"] < 1:
            return False
        return inst == Y and k == 4
    if cert.case == 4:
        return C.exceptional_family(Y) is None and k == 3
    return False


def verify_certificate(M: IntMatrix, result) -> bool:
    """Re-derive a result's claims from scratch; False on any mismatch."""
    if isinstance(result, C.Uncolorable):
        return result.witness.check(M)
    if isinstance(result, C.Chi):
        if M.is_zero():
            return result.k == 2 and isinstance(result.certificate, C.Bipartite) and is_bipartite(M)
        try:
            return _check_certificate(M, result.k, result.certificate)
        except (ValueError, KeyError):
            return False
    if isinstance(result, C.UnsupportedExact):
        lo, hi = result.report if result.report else (None, None)
        return hi is None or hi.coloring.k == hi.value
    return False
