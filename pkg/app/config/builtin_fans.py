"""내장 예제 팬 문서 정의.

- **BUILTIN_FANS** : CLI/API 에서 `--fan <이름>` 으로 참조하는 팬 문서(dict) 모음
- 광선 인덱스는 0-based, 문서 형식은 FanDocument 와 동일

"""
from itertools import product
from typing import Any, Dict, List

# ──────────────────────────────────────────────────────────────
# 곱 팬 헬퍼
# ──────────────────────────────────────────────────────────────

def _projective_lines_product(n: int) -> Dict[str, Any]:
    """(P¹)^n 팬: 광선 e_1..e_n, −e_1..−e_n, 극대 뿔은 각 좌표에서 부호 하나씩."""
    rays: List[List[int]] = []
    for sign in (1, -1):
        for i in range(n):
            rays.append([sign if j == i else 0 for j in range(n)])
    cones = [[i + n * choice for i, choice in enumerate(choices)] for choices in product((0, 1), repeat=n)]
    return {"rank": n, "rays": rays, "max_cones": cones}


# ──────────────────────────────────────────────────────────────
# 내장 팬 문서
# ──────────────────────────────────────────────────────────────

BUILTIN_FANS: Dict[str, Dict[str, Any]] = {
    "p2": {
        "format_version": "1",
        "name": "p2",
        "rank": 2,
        "rays": [[1, 0], [0, 1], [-1, -1]],
        "max_cones": [[0, 1], [0, 2], [1, 2]],
    },
    "p1p1": {"format_version": "1", "name": "p1p1", **_projective_lines_product(2)},
    "p1p1p1": {"format_version": "1", "name": "p1p1p1", **_projective_lines_product(3)},
    # P² 의 한 점 블로업 (광선 (1,1) 이 예외 인자)
    "f1": {
        "format_version": "1",
        "name": "f1",
        "rank": 2,
        "rays": [[1, 0], [0, 1], [-1, -1], [1, 1]],
        "max_cones": [[0, 3], [1, 3], [0, 2], [1, 2]],
    },
    # 8 광선 / 12 극대 뿔 3차원 예제. N¹ 좌표는 D_1, D_2, D_3, D_7, D_8 (1-based) 로 고정
    "paper-example": {
        "format_version": "1",
        "name": "paper-example",
        "rank": 3,
        "rays": [
            [1, 1, -1],
            [-1, 0, -1],
            [0, -1, -1],
            [1, 0, -1],
            [0, 1, -1],
            [-1, -1, -1],
            [0, 0, -1],
            [0, 0, 1],
        ],
        "max_cones": [
            [0, 3, 7], [0, 4, 7], [1, 4, 7], [1, 5, 7], [2, 5, 7], [2, 3, 7],
            [0, 3, 4], [1, 4, 5], [2, 3, 5], [3, 4, 6], [4, 5, 6], [3, 5, 6],
        ],
        "divisor_basis": [0, 1, 2, 6, 7],
    },
}

# 1-based 번호로 보고서에 병기할 팬
ONE_BASED_LABELS = frozenset({"paper-example"})
