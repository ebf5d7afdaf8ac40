"""Chromatic numbers of Abelian Cayley graphs from Heuberger matrices of rank <= 2.

Every answer carries a certificate naming the classification case that
produced it; :func:`cayley_chroma.oracle.verify_certificate` re-checks
certificates from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .intmat import (
    IntMatrix,
    LoopWitness,
    SignedPermWitness,
    UnimodularWitness,
    column_hnf,
    column_sums,
    delete_zero_rows,
    divides,
    drop_dependent_columns,
    gcd_all,
    has_loops,
    is_bipartite,
    lattice_member,
    row_divisible_by,
    signed_permutations,
    unit_vector,
    xgcd,
    zero_rows,
)


class PreconditionError(ValueError):
    """Input violates the hypotheses of the theorem being applied."""


class MhnfError(RuntimeError):
    """No modified Hermite normal form was found (a bug, never expected)."""


class InconsistencyError(RuntimeError):
    """A classification case disagreed with a direct lattice computation."""


# --------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class Bipartite:
    column_sums: tuple[int, ...]


@dataclass(frozen=True)
class TomatoCage:
    odd_entries: int


@dataclass(frozen=True)
class OneRowGcd:
    e: int


@dataclass(frozen=True)
class CirculantParams:
    n: int
    a: int
    b: int

    def violation(self) -> str | None:
        n, a, b = self.n, self.a, self.b
        if n == 0:
            return "n is zero"
        if math.gcd(math.gcd(a, b), n) != 1:
            return "gcd(a, b, n) != 1"
        if a % n == 0 or b % n == 0:
            return "n divides a or b"
        return None


@dataclass(frozen=True)
class CirculantCase:
    case: int
    params: CirculantParams


@dataclass(frozen=True)
class TwoByTwoCase:
    case: int
    triangular: IntMatrix
    row_witness: SignedPermWitness
    col_witness: UnimodularWitness
    d: int
    e: int
    q: int | None = None
    circulant: CirculantCase | None = None


@dataclass(frozen=True)
class LShaped:
    case: int


@dataclass(frozen=True)
class ThreeByTwoCase:
    """``family`` is 1..6 for the exceptional chi=4 families, 0 otherwise."""

    case: int
    mhnf: IntMatrix
    row_witness: SignedPermWitness
    col_witness: UnimodularWitness
    family: int = 0
    params: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class FourByTwo:
    row_witness: SignedPermWitness
    col_witness: UnimodularWitness
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class FourByTwoNegative:
    candidates_checked: int


@dataclass(frozen=True)
class MainTheorem:
    m: int


@dataclass(frozen=True)
class ZeroRowReduction:
    deleted_rows: tuple[int, ...]
    inner: "Certificate"


@dataclass(frozen=True)
class DependentColumnReduction:
    reduced: IntMatrix
    inner: "Certificate"


Certificate = Union[
    Bipartite, TomatoCage, OneRowGcd, CirculantCase, TwoByTwoCase, LShaped, ThreeByTwoCase,
    FourByTwo, FourByTwoNegative, MainTheorem, ZeroRowReduction, DependentColumnReduction,
]


# --------------------------------------------------------------------------
# Results


@dataclass(frozen=True)
class Uncolorable:
    witness: LoopWitness

    @property
    def value(self) -> float:
        return math.inf

    def __str__(self):
        return "uncolorable (loops)"


@dataclass(frozen=True)
class Chi:
    k: int
    certificate: Certificate

    @property
    def value(self) -> int:
        return self.k

    def __str__(self):
        return f"chi = {self.k}"


@dataclass(frozen=True)
class UnsupportedExact:
    """Rank >= 3: no classification theorem, only oracle bounds."""

    lower: float | None
    upper: int | None
    report: object = None

    @property
    def value(self) -> None:
        return None

    def __str__(self):
        hi = "?" if self.upper is None else self.upper
        return f"unsupported-exact: {self.lower} <= chi <= {hi}"


ChromaticResult = Union[Uncolorable, Chi, UnsupportedExact]


def same_answer(x: ChromaticResult, y: ChromaticResult) -> bool:
    """Equal tag and value, ignoring certificates."""
    return type(x) is type(y) and x.value == y.value


def _loops_or_fail(M: IntMatrix, reason: str) -> Uncolorable:
    w = has_loops(M)
    if w is None:
        raise InconsistencyError(f"{reason} but no e_i lies in the column lattice of {M}")
    return Uncolorable(w)


# --------------------------------------------------------------------------
# Rank one


def chi_one_row(y: IntMatrix) -> ChromaticResult:
    if y.nrows != 1:
        raise PreconditionError("expected a single row")
    e = gcd_all(y.row(0))
    if e == 0:
        raise PreconditionError("row is all zero")
    if e == 1:
        return _loops_or_fail(y, "gcd of the row is 1")
    return Chi(2 if e % 2 == 0 else 3, OneRowGcd(e))


def chi_one_column(y: IntMatrix) -> ChromaticResult:
    if y.ncols != 1:
        raise PreconditionError("expected a single column")
    col = y.column(0)
    if not any(col):
        raise PreconditionError("column is zero")
    if sorted(abs(x) for x in col)[-1] == 1 and sum(x != 0 for x in col) == 1:
        return _loops_or_fail(y, "column is +-e_i")
    odd = sum(x % 2 for x in col)
    return Chi(3 if odd % 2 else 2, TomatoCage(odd))


# --------------------------------------------------------------------------
# Circulants and 2 x 2


def circulant_case(p: CirculantParams) -> tuple[int, int]:
    """(case number 1..5, chromatic number) for a Heuberger circulant."""
    bad = p.violation()
    if bad:
        raise PreconditionError(f"not a Heuberger circulant: {bad}")
    n, a, b = p.n, p.a, p.b
    N = abs(n)
    if a % 2 and b % 2 and n % 2 == 0:
        return 1, 2
    if N == 5 and ((a - 2 * b) % 5 == 0 or (a + 2 * b) % 5 == 0):
        return 2, 5
    if N == 13 and ((a - 5 * b) % 13 == 0 or (a + 5 * b) % 13 == 0):
        return 3, 4
    if N != 5 and n % 3 and any((x - 2 * s * y) % N == 0 for x, y in ((a, b), (b, a)) for s in (1, -1)):
        return 4, 4
    return 5, 3


def chi_circulant(p: CirculantParams) -> Chi:
    case, k = circulant_case(p)
    return Chi(k, CirculantCase(case, p))


def triangularize_2x2(M: IntMatrix) -> tuple[IntMatrix, SignedPermWitness, UnimodularWitness]:
    """Lower-triangular matrix with nonnegative diagonal, P @ M @ U == T."""
    if M.shape != (2, 2):
        raise PreconditionError("expected a 2x2 matrix")
    hb = column_hnf(M)
    P = SignedPermWitness(IntMatrix.identity(2))
    return hb.H, P, hb.U


def two_by_two_case(T: IntMatrix) -> tuple[int, int | None, int | None]:
    """Case number of a triangular 2x2 matrix, plus q for case 4."""
    y11, y21, y22 = T[0, 0], T[1, 0], T[1, 1]
    e = gcd_all((y11, y21, y22))
    if y22 == 1 or (y11 == 1 and divides(y22, y21)) or (y11 == 0 and math.gcd(y21, y22) == 1):
        return 1, None, None
    if (y11 + y21) % 2 == 0 and y22 % 2 == 0:
        return 2, 2, None
    if y11 == 0 or y22 == 0 or e > 1 or divides(y22, y21):
        return 3, 3, None
    for q in range(abs(y11) + 1):
        if math.gcd(y11, y21 + q * y22) == 1:
            return 4, None, q
    raise InconsistencyError(f"no q in [0, {abs(y11)}] makes gcd(y11, y21 + q y22) = 1 for {T}")


def chi_2x2(M: IntMatrix) -> ChromaticResult:
    T, P, U = triangularize_2x2(M)
    y11, y21, y22 = T[0, 0], T[1, 0], T[1, 1]
    d, e = math.gcd(y11, y21), gcd_all((y11, y21, y22))
    case, k, q = two_by_two_case(T)
    if case == 1:
        return _loops_or_fail(M, "2x2 loop case")
    if case in (2, 3):
        return Chi(k, TwoByTwoCase(case, T, P, U, d, e))
    params = CirculantParams(y11 * y22, -y21 - q * y22, y11)
    bad = params.violation()
    if bad:
        raise InconsistencyError(f"2x2 case 4 produced an invalid circulant {params}: {bad}")
    inner = chi_circulant(params)
    return Chi(inner.k, TwoByTwoCase(4, T, P, U, d, e, q, inner.certificate))


# --------------------------------------------------------------------------
# 3 x 2


def l_shaped_case(M: IntMatrix) -> int:
    if M.shape != (3, 2):
        raise PreconditionError("expected a 3x2 matrix")
    (y11, y12), (y21, y22), (y31, y32) = M.rows
    if y12 or y22 or min(y11, y21, y32) <= 0 or not (-y32 <= 2 * y31 <= 0):
        raise PreconditionError(f"{M} is not L-shaped")
    if y32 == 1:
        return 1
    if (y11 + y21 + y31) % 2 == 0 and y32 % 2 == 0:
        return 2
    if y11 == y21 == -y31 == 1 and y32 % 3 and y32 > 1:
        return 3
    return 4


def chi_l_shaped(M: IntMatrix) -> ChromaticResult:
    case = l_shaped_case(M)
    if case == 1:
        return _loops_or_fail(M, "L-shaped matrix with y32 = 1")
    return Chi({2: 2, 3: 4, 4: 3}[case], LShaped(case))


def is_mhnf(M: IntMatrix) -> bool:
    if M.shape != (3, 2) or any(not any(row) for row in M.rows):
        return False
    (y11, y12), (y21, y22), (y31, y32) = M.rows
    return (
        y11 > 0
        and y12 == 0
        and (y11 * y22 - y11 * y32) % 3 == 0
        and y22 <= y32
        and abs(y22) <= abs(y32)
        and ((y22 == 0 and -abs(y32) <= 2 * y31 <= 0) or -abs(y22) <= 2 * y21 <= 0)
    )


@dataclass(frozen=True)
class MhnfForm:
    matrix: IntMatrix
    row_witness: SignedPermWitness
    col_witness: UnimodularWitness


def _window_shifts(value: int, step: int) -> list[int]:
    # t with -|step| <= 2 (value + t step) <= 0
    s = abs(step)
    out = []
    for target in range(-(s // 2), 1):
        if (target - value) % s == 0:
            out.append((target - value) // step)
    return out


def to_mhnf(M: IntMatrix) -> MhnfForm:
    """An MHNF matrix reachable by row signed permutations and unimodular
    column operations.

    Inputs already in MHNF come back unchanged; otherwise the
    lexicographically least candidate is chosen, so the map is idempotent.
    """
    if M.shape != (3, 2):
        raise PreconditionError("expected a 3x2 matrix")
    if zero_rows(M):
        raise PreconditionError("matrix has a zero row")
    if is_mhnf(M):
        return MhnfForm(M, SignedPermWitness(IntMatrix.identity(3)), UnimodularWitness(IntMatrix.identity(2)))
    if column_hnf(M).rank < 2:
        raise MhnfError(f"{M} has dependent columns; no MHNF exists")
    best = None
    for P in signed_permutations(3):
        PM = P @ M
        hb = column_hnf(PM)
        if hb.pivots[0] != 0:
            continue
        H, U = hb.H, hb.U.U
        for sigma in (1, -1):
            c1 = H.column(0)
            c2 = tuple(sigma * x for x in H.column(1))
            if c2[1]:
                shifts = _window_shifts(c1[1], c2[1])
            else:
                shifts = _window_shifts(c1[2], c2[2])
            for t in shifts:
                col1 = tuple(a + t * b for a, b in zip(c1, c2))
                cand = IntMatrix.from_columns([col1, c2], 3)
                if not is_mhnf(cand):
                    continue
                key = tuple(x for row in cand.rows for x in row)
                if best is None or key < best[0]:
                    step = IntMatrix([[1, 0], [t * sigma, sigma]])
                    best = (key, cand, P, U @ step)
    if best is None:
        raise MhnfError(f"no MHNF found for {M}")
    _, cand, P, U = best
    assert P @ M @ U == cand
    return MhnfForm(cand, SignedPermWitness(P), UnimodularWitness(U))


def exceptional_family(Y: IntMatrix) -> tuple[int, tuple[tuple[str, int], ...]] | None:
    """Match a 3x2 matrix against the six chi=4 families; returns (family, params)."""
    if Y.shape != (3, 2):
        return None
    (y11, y12), (y21, y22), (y31, y32) = Y.rows
    if (y11, y12) != (1, 0):
        return None
    if (y21, y22) == (0, 1):
        k = (y32 - 1) // 3
        if k >= 1 and y32 == 1 + 3 * k and abs(y31) == 3 * k:
            return 1, (("k", k), ("sign", 1 if y31 > 0 else -1))
    if (y21, y22) == (0, -1):
        k = (y32 + 1) // 3
        if k >= 1 and y32 == -1 + 3 * k and abs(y31) == 3 * k:
            return 2, (("k", k), ("sign", 1 if y31 > 0 else -1))
    if (y21, y22) == (-1, 2):
        k = (y32 - 2) // 3
        if k >= 1 and y32 == 2 + 3 * k and y31 == -1 - 3 * k:
            return 3, (("k", k),)
    if (y21, y22) == (-1, -2):
        k = (y32 + 2) // 3
        if k >= 1 and y32 == -2 + 3 * k and y31 == -1 + 3 * k:
            return 4, (("k", k),)
    if (y21, y22) == (0, -1) and y32 == 2 and y31 % 3 == 0:
        return 5, (("b", y31 // 3),)
    if y21 == -1 and y31 == -1 and y22 % 3:
        a = y22
        k = (y32 - a) // 3 + 1
        if k >= 1 and y32 == a + 3 * (k - 1):
            return 6, (("a", a), ("k", k))
    return None


def exceptional_instance(family: int, *, k: int = 1, a: int = 1, b: int = 0, sign: int = 1) -> IntMatrix:
    """Build a member of one of the six chi=4 families."""
    rows = {
        1: [[1, 0], [0, 1], [sign * 3 * k, 1 + 3 * k]],
        2: [[1, 0], [0, -1], [sign * 3 * k, -1 + 3 * k]],
        3: [[1, 0], [-1, 2], [-1 - 3 * k, 2 + 3 * k]],
        4: [[1, 0], [-1, -2], [-1 + 3 * k, -2 + 3 * k]],
        5: [[1, 0], [0, -1], [3 * b, 2]],
        6: [[1, 0], [-1, a], [-1, a + 3 * (k - 1)]],
    }[family]
    return IntMatrix(rows)


def three_by_two_case(Y: IntMatrix) -> tuple[int, int | None, int, tuple]:
    """(case, chi or None for loops, family, params) for an MHNF matrix."""
    if Y.column(0) == (1, 0, 0) or Y.column(1) == (0, 0, 1):
        return 1, None, 0, ()
    if (Y[0, 0] + Y[1, 0] + Y[2, 0]) % 2 == 0 and (Y[1, 1] + Y[2, 1]) % 2 == 0:
        return 2, 2, 0, ()
    fam = exceptional_family(Y)
    if fam is not None:
        return 3, 4, fam[0], fam[1]
    return 4, 3, 0, ()


def chi_3x2(M: IntMatrix) -> ChromaticResult:
    if M.shape != (3, 2):
        raise PreconditionError("expected a 3x2 matrix")
    if zero_rows(M):
        raise PreconditionError("matrix has a zero row")
    if column_hnf(M).rank < 2:
        reduced = drop_dependent_columns(M)
        inner = chi_one_column(reduced)
        if isinstance(inner, Chi):
            return Chi(inner.k, DependentColumnReduction(reduced, inner.certificate))
        return _loops_or_fail(M, "rank-one 3x2 with a +-e_i column")
    form = to_mhnf(M)
    case, k, fam, params = three_by_two_case(form.matrix)
    if case == 1:
        return _loops_or_fail(M, "MHNF column equal to e_1 or e_3")
    return Chi(k, ThreeByTwoCase(case, form.matrix, form.row_witness, form.col_witness, fam, params))


def three_div_row_bound(M: IntMatrix) -> int | None:
    """Index of a row divisible by 3, which caps chi at 3 for loop-free 3x2/4x2 inputs."""
    if M.shape not in ((3, 2), (4, 2)):
        raise PreconditionError("expected a 3x2 or 4x2 matrix")
    if zero_rows(M):
        raise PreconditionError("matrix has a zero row")
    if has_loops(M) is not None:
        raise PreconditionError("graph has loops")
    for i, row in enumerate(M.rows):
        if row_divisible_by(row, 3):
            return i
    return None


# --------------------------------------------------------------------------
# 4 x 2


def _four_by_two_witness(PM: IntMatrix) -> tuple[IntMatrix, int, int, int] | None:
    """U with PM @ U = [[1,a],[1,b],[1,c],[0,1]] and 3 | a+b+c, if one exists."""
    hb = column_hnf(PM)
    if hb.rank != 2:
        return None
    B = IntMatrix([row[:2] for row in hb.H.rows], 2)
    x = lattice_member(B, (1, 1, 1, 0))
    if x is None or math.gcd(*x) != 1:
        return None
    g, s, t = xgcd(x[0], x[1])
    w = B @ (-t, s)
    if abs(w[3]) != 1:
        return None
    if w[3] < 0:
        w = tuple(-v for v in w)
    # normalize a = 0 by subtracting multiples of (1,1,1,0)
    w = tuple(v - w[0] * u for v, u in zip(w, (1, 1, 1, 0)))
    a, b, c = w[0], w[1], w[2]
    if (a + b + c) % 3:
        return None
    c1 = lattice_member(PM, (1, 1, 1, 0))
    c2 = lattice_member(PM, w)
    U = IntMatrix.from_columns([c1, c2], 2)
    if abs(U.determinant()) != 1:
        return None
    return U, a, b, c


def four_by_two_search(M: IntMatrix) -> tuple[FourByTwo | None, int]:
    checked = 0
    for P in signed_permutations(4):
        checked += 1
        found = _four_by_two_witness(P @ M)
        if found:
            U, a, b, c = found
            return FourByTwo(SignedPermWitness(P), UnimodularWitness(U), a, b, c), checked
    return None, checked


def _check_generic_preconditions(M: IntMatrix, what: str) -> None:
    if zero_rows(M):
        raise PreconditionError(f"{what}: matrix has a zero row")
    if has_loops(M) is not None:
        raise PreconditionError(f"{what}: graph has loops")
    if is_bipartite(M):
        raise PreconditionError(f"{what}: graph is bipartite")


def chi_4x2(M: IntMatrix) -> Chi:
    if M.shape != (4, 2):
        raise PreconditionError("expected a 4x2 matrix")
    _check_generic_preconditions(M, "4x2 theorem")
    witness, checked = four_by_two_search(M)
    if witness is not None:
        return Chi(4, witness)
    return Chi(3, FourByTwoNegative(checked))


def chi_mx2_main(M: IntMatrix) -> Chi:
    m, r = M.shape
    if r != 2 or m < 5:
        raise PreconditionError("expected an m x 2 matrix with m >= 5")
    _check_generic_preconditions(M, "main theorem")
    return Chi(3, MainTheorem(m))


# --------------------------------------------------------------------------
# Dispatcher


def chi(M: IntMatrix, bounds_config=None) -> ChromaticResult:
    """Chromatic number of the graph of an arbitrary integer matrix.

    Rank >= 3 inputs (after dropping dependent columns) are answered with
    oracle bounds only, computed with ``bounds_config`` when given.
    """
    if M.is_zero():
        # Z^m with the standard generators: a grid graph
        return Chi(2, Bipartite(column_sums(M)))
    deleted = tuple(zero_rows(M))
    M1 = delete_zero_rows(M) if deleted else M
    result = _chi_reduced(M1, bounds_config)
    if deleted:
        if isinstance(result, Uncolorable):
            # zero rows contribute zero to M @ c, so the witness lifts by index
            kept = [i for i in range(M.nrows) if i not in deleted]
            result = Uncolorable(LoopWitness(kept[result.witness.index], result.witness.coefficients))
        elif isinstance(result, Chi):
            result = Chi(result.k, ZeroRowReduction(deleted, result.certificate))
    return result


def _chi_reduced(M: IntMatrix, bounds_config) -> ChromaticResult:
    N = drop_dependent_columns(M)
    dropped = N.ncols < M.ncols
    loop = has_loops(M)
    if loop is not None:
        return Uncolorable(loop)
    if not dropped:
        N = M
    if is_bipartite(N):
        result = Chi(2, Bipartite(column_sums(N)))
    else:
        m, r = N.shape
        if r == 1:
            result = chi_one_column(N)
        elif m == 1:
            result = chi_one_row(N)
        elif (m, r) == (2, 2):
            result = chi_2x2(N)
        elif (m, r) == (3, 2):
            result = chi_3x2(N)
        elif (m, r) == (4, 2):
            result = chi_4x2(N)
        elif r == 2:
            result = chi_mx2_main(N)
        else:
            from .oracle import SandwichConfig, lower_bound, upper_bound

            cfg = bounds_config or SandwichConfig()
            lo = lower_bound(N, cfg.radii, cfg)
            hi = upper_bound(N, cfg.moduli, cfg)
            return UnsupportedExact(lo.value, None if hi is None else hi.value, (lo, hi))
    if isinstance(result, Uncolorable):
        raise InconsistencyError(f"theorem reports loops for loop-free {M}")
    if dropped:
        result = Chi(result.k, DependentColumnReduction(N, result.certificate))
    return result
