"""정수/유리수 정확 선형대수 유틸리티.

- **IntMatrix** : 임의 정밀도 정수 행렬 (불변)
- **smith_normal_form** : U·A·V = S 분해 (격자 계산의 기반)
- **integer_kernel_basis** : {x ∈ Z^n : A·x = 0} 의 격자 기저
- 그 외 Fraction 기반 가우스 소거 헬퍼 (rref, rank, nullspace, solve)

부동소수점은 어디에서도 사용하지 않는다.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

# 유리수 벡터 (불변, 해시 가능)
Vector = Tuple[Fraction, ...]


# ──────────────────────────────────────────────────────────────
# 벡터 헬퍼
# ──────────────────────────────────────────────────────────────

def as_vector(values: Iterable) -> Vector:
    """정수/문자열/Fraction 시퀀스를 Fraction 튜플로 변환."""
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(a).denominator == 1 for a in v)


def denominator_lcm(v: Sequence) -> int:
    """모든 성분의 분모의 최소공배수."""
    return reduce(lcm, (Fraction(a).denominator for a in v), 1)


def primitive_vector(v: Sequence) -> Vector:
    """v 가 생성하는 반직선 위의 원시 정수 벡터 (성분 gcd = 1).

    Raises:
        ValueError: 영벡터인 경우
    """
    values = as_vector(v)
    if is_zero_vector(values):
        raise ValueError("zero vector has no primitive generator")
    scale = denominator_lcm(values)
    ints = [int(a * scale) for a in values]
    g = reduce(gcd, (abs(a) for a in ints), 0)
    return tuple(Fraction(a // g) for a in ints)


# ──────────────────────────────────────────────────────────────
# 정수 행렬
# ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class IntMatrix:
    """행 우선 정수 행렬. rows × cols, 성분은 Python int."""

    entries: Tuple[Tuple[int, ...], ...]
    cols: int

    @property
    def rows(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "IntMatrix":
        data = []
        for row in rows:
            values = []
            for a in row:
                f = Fraction(a)
                if f.denominator != 1:
                    raise ValueError(f"non-integral matrix entry: {a}")
                values.append(int(f))
            data.append(tuple(values))
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("matrix rows must all have the same length")
        return cls(tuple(data), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "IntMatrix":
        return cls.from_rows(([col[i] for col in columns] for i in range(rows)), cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_other = [other.column(j) for j in range(other.cols)]
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols_other) for r in self.entries),
            other.cols,
        )

    def apply(self, v: Sequence) -> Vector:
        """행렬-벡터 곱 (유리수 벡터 허용)."""
        return tuple(dot(r, v) for r in self.entries)

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


# ──────────────────────────────────────────────────────────────
# Fraction 가우스 소거
# ──────────────────────────────────────────────────────────────

def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    """기약 행 사다리꼴과 피벗 열 목록을 반환 (영행은 제거)."""
    mat = [[Fraction(a) for a in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        p = mat[r][c]
        mat[r] = [a / p for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace_basis(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """{x : rows·x = 0} 의 유리수 기저 (각 벡터는 원시 정수로 정규화)."""
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis: List[Vector] = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(primitive_vector(x))
    return basis


def row_space_basis(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """행 공간의 표준 기저 (rref 행을 원시 정수로 정규화)."""
    reduced, _ = rref(rows, ncols)
    return [primitive_vector(r) for r in reduced]


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Optional[Vector]:
    """rows·x = rhs 의 한 해 (자유변수 0). 해가 없으면 None."""
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    mat = [[Fraction(a) for a in r] for r in rows]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        p = mat[c][c]
        det *= p
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / p
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return det


def coordinates_in_basis(basis: Sequence[Sequence], v: Sequence) -> Optional[Vector]:
    """v = Σ c_i basis_i 를 만족하는 계수 c (기저가 독립이라고 가정). 없으면 None."""
    if not basis:
        return () if is_zero_vector(v) else None
    dim = len(v)
    columns_as_rows = [[basis[j][i] for j in range(len(basis))] for i in range(dim)]
    return solve_linear(columns_as_rows, v, len(basis))


# ──────────────────────────────────────────────────────────────
# Smith 표준형
# ──────────────────────────────────────────────────────────────

def _smallest_nonzero(S: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(t, len(S)):
        for j in range(t, len(S[0])):
            a = S[i][j]
            if a != 0 and (best is None or abs(a) < best[0]):
                best = (abs(a), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, S, V) with U·A·V = S, U/V 유니모듈러, S 대각 s_1 | s_2 | ⋯, s_i ≥ 0.

    피벗은 남은 부분행렬에서 절댓값이 가장 작은 0 아닌 성분 (동률이면 행·열 순서상 처음).
    """
    m, n = A.rows, A.cols
    S = [list(r) for r in A.entries]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i: int, k: int) -> None:
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        for row in S:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(target: int, source: int, q: int) -> None:
        # row_target += q · row_source
        S[target] = [a + q * b for a, b in zip(S[target], S[source])]
        U[target] = [a + q * b for a, b in zip(U[target], U[source])]

    def add_col(target: int, source: int, q: int) -> None:
        for row in S:
            row[target] += q * row[source]
        for row in V:
            row[target] += q * row[source]

    for t in range(min(m, n)):
        while True:
            pos = _smallest_nonzero(S, t)
            if pos is None:
                break
            i0, j0 = pos
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            p = S[t][t]
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
            if any(S[i][t] for i in range(t + 1, m)) or any(S[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p != 0),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]

    return (
        IntMatrix(tuple(tuple(r) for r in U), m),
        IntMatrix(tuple(tuple(r) for r in S), n),
        IntMatrix(tuple(tuple(r) for r in V), n),
    )


def integer_kernel_basis(A: IntMatrix) -> List[Vector]:
    """{x 정수 : A·x = 0} 의 격자 기저 (크기 = cols − rank A)."""
    _, S, V = smith_normal_form(A)
    r = sum(1 for d in S.diagonal() if d != 0)
    basis = []
    for j in range(r, A.cols):
        col = V.column(j)
        # 부호 정규화: 첫 번째 0 아닌 성분이 양수
        lead = next(a for a in col if a != 0)
        sign = 1 if lead > 0 else -1
        basis.append(tuple(Fraction(sign * a) for a in col))
    return basis
