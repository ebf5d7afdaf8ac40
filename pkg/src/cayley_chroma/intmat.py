"""Exact integer matrix algebra for Heuberger matrices.

Everything here works on Python integers, so entries never wrap.  A matrix
may optionally carry a bit width; every matrix produced from it (and every
intermediate value inside the normal-form routines) is then range-checked
and :class:`IntOverflowError` is raised instead of continuing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Iterable, Sequence


class IntOverflowError(OverflowError):
    """An entry left the range of a fixed-width matrix."""


class AllZeroRowsError(ValueError):
    """Deleting zero rows would leave a matrix with no rows."""


class ZeroColumnError(ValueError):
    pass


def _check_width(values: Iterable[int], bits: int | None) -> None:
    if bits is None:
        return
    lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    for x in values:
        if x < lo or x > hi:
            raise IntOverflowError(f"entry {x} does not fit in {bits} bits")


class IntMatrix:
    """Immutable m x r matrix of exact integers (m >= 1, r >= 0)."""

    __slots__ = ("_rows", "_ncols", "bits")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None, *, bits: int | None = None):
        data = tuple(tuple(row) for row in rows)
        if not data:
            raise ValueError("a matrix needs at least one row")
        width = len(data[0]) if ncols is None else ncols
        for row in data:
            if len(row) != width:
                raise ValueError("all rows must have the same length")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise TypeError(f"entries must be integers, got {x!r}")
        if bits is not None:
            _check_width((x for row in data for x in row), bits)
        self._rows = data
        self._ncols = width
        self.bits = bits

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int | None = None, *, bits=None) -> IntMatrix:
        if nrows is None:
            nrows = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(nrows)], len(columns), bits=bits)

    @classmethod
    def identity(cls, n: int, *, bits=None) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, bits=bits)

    def _new(self, rows, ncols=None) -> IntMatrix:
        return IntMatrix(rows, ncols, bits=self.bits)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self._ncols)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._rows]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self):
        return hash((self._ncols, self._rows))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    @property
    def T(self) -> IntMatrix:
        if self._ncols == 0:
            raise ValueError("cannot transpose a matrix with no columns")
        return self._new(self.columns())

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self._ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return self._new(
                [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
                other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self._ncols:
            raise ValueError(f"vector of length {len(vec)} does not match {self._ncols} columns")
        out = tuple(sum(a * b for a, b in zip(row, vec)) for row in self._rows)
        _check_width(out, self.bits)
        return out

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return self._new([a + b for a, b in zip(self._rows, other.rows)], self._ncols + other.ncols)

    def with_rows(self, rows: Iterable[Sequence[int]]) -> IntMatrix:
        return self._new(rows, self._ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self._ncols:
            raise ValueError("determinant needs a square matrix")
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def divides(a: int, b: int) -> bool:
    """a | b over the integers (0 divides only 0)."""
    if a == 0:
        return b == 0
    return b % a == 0


def unit_vector(m: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(m))


# --------------------------------------------------------------------------
# Witnesses and normal forms


@dataclass(frozen=True)
class UnimodularWitness:
    U: IntMatrix

    def __post_init__(self):
        if self.U.nrows != self.U.ncols:
            raise ValueError("unimodular witness must be square")
        if self.U.nrows and abs(self.U.determinant()) != 1:
            raise ValueError("determinant is not +-1")

    @property
    def determinant(self) -> int:
        return self.U.determinant() if self.U.nrows else 1


def is_signed_permutation(P: IntMatrix) -> bool:
    n, r = P.shape
    if n != r:
        return False
    for line in list(P.rows) + P.columns():
        nonzero = [x for x in line if x]
        if len(nonzero) != 1 or abs(nonzero[0]) != 1:
            return False
    return True


@dataclass(frozen=True)
class SignedPermWitness:
    P: IntMatrix

    def __post_init__(self):
        if not is_signed_permutation(self.P):
            raise ValueError("not a signed permutation matrix")


def signed_permutations(n: int):
    """All 2^n * n! signed permutation matrices, identity first.

    Order: permutations lexicographically, then sign patterns with +1
    before -1 in each position.
    """
    from itertools import permutations

    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            rows = [[0] * n for _ in range(n)]
            for i, (p, s) in enumerate(zip(perm, signs)):
                rows[i][p] = s
            yield IntMatrix(rows, n)


@dataclass(frozen=True)
class HermiteBasis:
    """Column-style Hermite normal form: ``source @ U.U == H``.

    ``H`` is lower echelon.  Column ``k`` has its pivot in row ``pivots[k]``,
    the pivot is positive, entries above it are zero and entries of earlier
    columns in the pivot row lie in ``[0, pivot)``.  Zero columns sit at the
    right.
    """

    H: IntMatrix
    U: UnimodularWitness
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[tuple[int, ...]]:
        return [self.H.column(k) for k in range(self.rank)]

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of the coset ``v + lattice``."""
        w = list(v)
        H = self.H
        for k, p in enumerate(self.pivots):
            q = w[p] // H[p, k]
            if q:
                for i in range(p, H.nrows):
                    w[i] -= q * H[i, k]
        return tuple(w)


def _col_combine(A, cols_a, k, j, x, y, u, v):
    # (col_k, col_j) <- (x col_k + y col_j, u col_k + v col_j)
    for row in A:
        a, b = row[k], row[j]
        row[k] = x * a + y * b
        row[j] = u * a + v * b
    for row in cols_a:
        a, b = row[k], row[j]
        row[k] = x * a + y * b
        row[j] = u * a + v * b


@lru_cache(maxsize=8192)
def column_hnf(M: IntMatrix) -> HermiteBasis:
    m, r = M.shape
    A = M.tolist()
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    pivots: list[int] = []
    k = 0
    for i in range(m):
        if k == r:
            break
        for j in range(k + 1, r):
            b = A[i][j]
            if b == 0:
                continue
            a = A[i][k]
            g, x, y = xgcd(a, b)
            _col_combine(A, U, k, j, x, y, -b // g, a // g)
            if M.bits is not None:
                _check_width((row[c] for row in A + U for c in (k, j)), M.bits)
        p = A[i][k]
        if p == 0:
            continue
        if p < 0:
            for row in A:
                row[k] = -row[k]
            for row in U:
                row[k] = -row[k]
            p = -p
        for j in range(k):
            q = A[i][j] // p
            if q:
                for row in A:
                    row[j] -= q * row[k]
                for row in U:
                    row[j] -= q * row[k]
        if M.bits is not None:
            _check_width((x for row in A + U for x in row), M.bits)
        pivots.append(i)
        k += 1
    return HermiteBasis(IntMatrix(A, r, bits=M.bits), UnimodularWitness(IntMatrix(U, r, bits=M.bits)), tuple(pivots))


def lattice_member(M: IntMatrix, v: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coefficients ``c`` with ``M @ c == v``, or None if v is not in the column lattice."""
    v = tuple(v)
    m, r = M.shape
    if len(v) != m:
        raise ValueError(f"vector length {len(v)} != {m} rows")
    hb = column_hnf(M)
    H = hb.H
    w = list(v)
    coeff = [0] * r
    pivot_col = {p: k for k, p in enumerate(hb.pivots)}
    for i in range(m):
        k = pivot_col.get(i)
        if k is None:
            if w[i]:
                return None
            continue
        t, rem = divmod(w[i], H[i, k])
        if rem:
            return None
        coeff[k] = t
        if t:
            for s in range(i, m):
                w[s] -= t * H[s, k]
    c = hb.U.U @ coeff
    assert M @ c == v
    return c


@dataclass(frozen=True)
class LoopWitness:
    """``M @ coefficients`` equals the standard basis vector ``e_index`` (0-based)."""

    index: int
    coefficients: tuple[int, ...]

    def check(self, M: IntMatrix) -> bool:
        if not 0 <= self.index < M.nrows or len(self.coefficients) != M.ncols:
            return False
        return M @ self.coefficients == unit_vector(M.nrows, self.index)


def has_loops(M: IntMatrix) -> LoopWitness | None:
    """Smallest ``i`` with e_i in the column lattice, or None when the graph is loop-free."""
    m = M.nrows
    for i in range(m):
        c = lattice_member(M, unit_vector(m, i))
        if c is not None:
            return LoopWitness(i, c)
    return None


def column_sums(M: IntMatrix) -> tuple[int, ...]:
    return tuple(sum(col) for col in M.columns())


def is_bipartite(M: IntMatrix) -> bool:
    return all(s % 2 == 0 for s in column_sums(M))


def zero_rows(M: IntMatrix) -> list[int]:
    return [i for i, row in enumerate(M.rows) if not any(row)]


def delete_zero_rows(M: IntMatrix) -> IntMatrix:
    kept = [row for row in M.rows if any(row)]
    if not kept:
        raise AllZeroRowsError("every row is zero")
    return M.with_rows(kept)


def drop_dependent_columns(M: IntMatrix) -> IntMatrix:
    hb = column_hnf(M)
    return IntMatrix([row[: hb.rank] for row in hb.H.rows], hb.rank, bits=M.bits)


def collapse_rows(M: IntMatrix, i: int, j: int, sign: int) -> IntMatrix:
    """Replace row i by row_i + sign*row_j and delete row j."""
    m = M.nrows
    if not (0 <= i < m and 0 <= j < m):
        raise IndexError(f"row index out of range for {m} rows")
    if i == j:
        raise ValueError("rows to collapse must be distinct")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    merged = tuple(a + sign * b for a, b in zip(M.row(i), M.row(j)))
    rows = [merged if s == i else row for s, row in enumerate(M.rows) if s != j]
    return M.with_rows(rows)


def reduce_column(M: IntMatrix, j: int) -> IntMatrix:
    col = M.column(j)
    g = gcd_all(col)
    if g == 0:
        raise ZeroColumnError(f"column {j} is zero")
    return M.with_rows([row[:j] + (row[j] // g,) + row[j + 1:] for row in M.rows])


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``left @ M @ right`` is diagonal with entries ``factors`` then zeros."""

    factors: tuple[int, ...]
    free_rank: int
    left: IntMatrix
    right: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.factors)


@lru_cache(maxsize=4096)
def smith_normal_form(M: IntMatrix) -> SmithForm:
    m, r = M.shape
    A = M.tolist()
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(r)] for i in range(r)]
    bits = M.bits

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for mat in (A, R):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        L[dst] = [a + q * b for a, b in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for mat in (A, R):
            for row in mat:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, r):
        best = None
        for i in range(t, m):
            for j in range(t, r):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, r):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if bits is not None:
                _check_width((x for mat in (A, L, R) for row in mat for x in row), bits)
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, r) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
        t += 1
    factors = tuple(A[i][i] for i in range(t))
    return SmithForm(factors, m - t, IntMatrix(L, m, bits=bits), IntMatrix(R, r, bits=bits))


def smith_diagonal(sf: SmithForm, shape: tuple[int, int]) -> IntMatrix:
    m, r = shape
    return IntMatrix([[sf.factors[i] if i == j and i < sf.rank else 0 for j in range(r)] for i in range(m)], r)


# --------------------------------------------------------------------------
# The pigeonhole step for 5 x 2 matrices


@dataclass(frozen=True)
class RowCombo:
    """Either a single row divisible by 3 (``j is None``) or rows ``i, j``
    with ``row_i + sign*row_j`` divisible by 3.  Indices are 0-based."""

    i: int
    j: int | None = None
    sign: int = 1

    @property
    def single(self) -> bool:
        return self.j is None

    def combined_row(self, M: IntMatrix) -> tuple[int, ...]:
        if self.j is None:
            return M.row(self.i)
        return tuple(a + self.sign * b for a, b in zip(M.row(self.i), M.row(self.j)))


def row_divisible_by(row: Sequence[int], n: int) -> bool:
    return all(x % n == 0 for x in row)


def find_three_divisible_pair(M: IntMatrix) -> RowCombo:
    if M.shape != (5, 2):
        raise ValueError(f"expected a 5x2 matrix, got {M.shape}")
    for i, row in enumerate(M.rows):
        if row_divisible_by(row, 3):
            return RowCombo(i)
    for i in range(5):
        for j in range(i + 1, 5):
            for sign in (-1, 1):
                combo = RowCombo(i, j, sign)
                if row_divisible_by(combo.combined_row(M), 3):
                    return combo
    raise AssertionError("pigeonhole over the four +-classes of Z_3^2 \\ 0 cannot fail")


def apply_row_combo(M: IntMatrix, combo: RowCombo) -> IntMatrix:
    """Collapse M to 4 rows so that one row is divisible by 3."""
    if combo.single:
        # merge two other rows; the divisible row survives untouched
        i, j = [s for s in range(M.nrows) if s != combo.i][:2]
        return collapse_rows(M, i, j, 1)
    return collapse_rows(M, combo.i, combo.j, combo.sign)


# --------------------------------------------------------------------------
# Random isomorphism moves (for invariance checks)


def random_signed_permutation(n: int, rng) -> IntMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[i][p] = rng.choice((1, -1))
    return IntMatrix(rows, n)


def random_unimodular(r: int, rng, steps: int = 4, bound: int = 3) -> IntMatrix:
    """Product of random shears (multipliers in [-bound, bound]), swaps and negations."""
    if r < 1:
        raise ValueError("need at least one column")
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(steps):
        kind = rng.randrange(3) if r > 1 else 2
        if kind == 0:
            i, j = rng.sample(range(r), 2)
            a = rng.randint(-bound, bound)
            for row in U:
                row[j] += a * row[i]
        elif kind == 1:
            i, j = rng.sample(range(r), 2)
            for row in U:
                row[i], row[j] = row[j], row[i]
        else:
            i = rng.randrange(r)
            if rng.random() < 0.5:
                for row in U:
                    row[i] = -row[i]
    return IntMatrix(U, r)
