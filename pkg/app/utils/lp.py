"""정확 유리수 선형계획법 (2단계 심플렉스, Bland 규칙).

maximize c·x  s.t.  A_ub·x ≤ b_ub,  A_eq·x = b_eq,  x_j ≥ 0 (free 에 속한 j 제외)

Bland 규칙으로 순환이 없으므로 항상 종료한다. 모든 연산은 Fraction.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from app.utils.ratlinalg import Vector, dot

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Vector] = None
    value: Optional[Fraction] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: List[List[Fraction]], r: int, c: int) -> None:
    p = T[r][c]
    T[r] = [a / p for a in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]


def _run_simplex(T: List[List[Fraction]], basis: List[int], cost: Sequence[Fraction], allowed: Sequence[int]) -> str:
    """정준형 태블로 T (마지막 열 = rhs) 에서 cost·y 최대화."""
    while True:
        basic = set(basis)
        entering = None
        for j in allowed:
            if j in basic:
                continue
            reduced = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, best[1], entering)
        basis[best[1]] = entering


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Iterable[int] = (),
) -> LPResult:
    """정확 LP. 반환 x 는 원래 변수 좌표."""
    nvars = len(c)
    free = set(free)

    # 표준형 변수: x_j = y_j (비음) 또는 y_j⁺ − y_j⁻ (자유)
    columns: List[tuple] = []
    for j in range(nvars):
        columns.append((j, 1))
        if j in free:
            columns.append((j, -1))
    n_struct = len(columns)
    n_slack = len(A_ub)

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(a[j]) * s for j, s in columns] + [Fraction(0)] * n_slack
        row[n_struct + k] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(a[j]) * s for j, s in columns] + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]

    m = len(rows)
    n_real = n_struct + n_slack
    # 1단계: 인공변수 a_i, maximize −Σ a_i
    T = [rows[i] + [Fraction(1) if k == i else Fraction(0) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n_real + i for i in range(m)]
    phase1_cost = [Fraction(0)] * n_real + [Fraction(-1)] * m
    _run_simplex(T, basis, phase1_cost, range(n_real + m))
    infeasibility = sum((T[i][-1] for i in range(m) if basis[i] >= n_real), Fraction(0))
    if infeasibility > 0:
        logger.debug(f"LP infeasible (phase 1 residual {infeasibility})")
        return LPResult(INFEASIBLE)

    # 기저에 남은 인공변수 축출, 불가능하면 중복 행 제거
    i = 0
    while i < len(T):
        if basis[i] >= n_real:
            col = next((j for j in range(n_real) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:n_real] + [row[-1]] for row in T]

    # 2단계
    cost = [Fraction(c[j]) * s for j, s in columns] + [Fraction(0)] * n_slack
    status = _run_simplex(T, basis, cost, range(n_real))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    y = [Fraction(0)] * n_real
    for i, b in enumerate(basis):
        y[b] = T[i][-1]
    x = [Fraction(0)] * nvars
    for (j, s), val in zip(columns, y[:n_struct]):
        x[j] += s * val
    x = tuple(x)
    return LPResult(OPTIMAL, x, dot(c, x))


def find_feasible_point(
    nvars: int,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Iterable[int] = (),
) -> Optional[Vector]:
    """실행 가능점 하나, 없으면 None."""
    result = maximize([0] * nvars, A_ub, b_ub, A_eq, b_eq, free)
    return result.x if result.is_optimal else None


def maximize_margin(
    nvars: int,
    strict_rows: Sequence[Sequence],
    A_eq: Sequence[Sequence] = (),
    free: Iterable[int] = (),
    cap: Fraction = Fraction(1),
) -> LPResult:
    """동차 부등식 strict_rows·x ≥ t 에서 t (≤ cap) 최대화.

    반환 x 의 마지막 성분이 여유값 t. t > 0 이면 strict_rows·x > 0 을 만족하는 해가 존재.
    """
    t = nvars
    A_ub = []
    b_ub = []
    for row in strict_rows:
        # −row·x + t ≤ 0
        A_ub.append([-Fraction(a) for a in row] + [Fraction(1)])
        b_ub.append(Fraction(0))
    A_ub.append([Fraction(0)] * nvars + [Fraction(1)])
    b_ub.append(cap)
    eqs = [list(r) + [Fraction(0)] for r in A_eq]
    objective = [Fraction(0)] * nvars + [Fraction(1)]
    return maximize(objective, A_ub, b_ub, eqs, [0] * len(eqs), free=set(free) | {t})
