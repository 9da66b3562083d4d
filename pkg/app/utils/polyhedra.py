"""유리 다면체 뿔(PolyCone)과 폴리토프(Polytope).

- 생성자 ↔ 면 법선 변환은 PPL(pplpy) 의 최소화된 생성자/제약 시스템
- 입력은 원시 정수 벡터로 정규화, 출력은 사전식 정렬
- 부분공간 안의 뿔은 등식 제약(equations)으로 기록 (facet_normals 에서는 ±n 쌍으로 노출)
- 극선은 선형성 공간을, 면 법선은 등식 공간을 법으로 환원한 대표로 저장
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import ppl

from app.models.errors import DimensionMismatchError, NotStronglyConvexError
from app.utils.ratlinalg import (
    Vector,
    as_vector,
    denominator_lcm,
    dot,
    is_zero_vector,
    primitive_vector,
    rank,
    rref,
    row_space_basis,
)

logger = logging.getLogger(__name__)


def _scaled(v: Sequence) -> Tuple[int, ...]:
    """분모를 곱한 정수 벡터 (방향 보존)."""
    scale = denominator_lcm(v)
    return tuple(int(Fraction(a) * scale) for a in v)


def _expression(coeffs: Sequence[int], variables: Sequence["ppl.Variable"]) -> "ppl.Linear_Expression":
    return sum((c * x for c, x in zip(coeffs, variables)), ppl.Linear_Expression(0))


def _coefficients(item, dim: int) -> Tuple[int, ...]:
    coeffs = tuple(int(c) for c in item.coefficients())
    return coeffs + (0,) * (dim - len(coeffs))


def _canonical_pair(dim: int, vectors: Sequence[Sequence], subspace: Sequence[Sequence]) -> Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]:
    """(부분공간을 법으로 환원한 원시 벡터들, 부분공간의 rref 기저).

    환원은 rref 피벗 열을 0 으로 만드는 대표를 고른다.
    """
    basis = tuple(row_space_basis(subspace, dim)) if subspace else ()
    reduced, pivots = rref(basis, dim) if basis else ([], [])
    seen = set()
    for v in vectors:
        out = list(as_vector(v))
        for row, p in zip(reduced, pivots):
            if out[p] != 0:
                f = out[p]
                out = [a - f * b for a, b in zip(out, row)]
        if not is_zero_vector(out):
            seen.add(primitive_vector(out))
    return tuple(sorted(seen)), basis


# ──────────────────────────────────────────────────────────────
# PPL 변환
# ──────────────────────────────────────────────────────────────

def _constraint_polyhedron(dim: int, inequalities: Sequence[Vector], equations: Sequence[Vector]) -> "ppl.C_Polyhedron":
    """{x : ⟨a,x⟩ ≥ 0, ⟨e,x⟩ = 0} 를 PPL 다면체로."""
    cone = ppl.C_Polyhedron(dim, "universe")
    vrs = [ppl.Variable(i) for i in range(dim)]
    cs = ppl.Constraint_System()
    for a in inequalities:
        if not is_zero_vector(a):
            cs.insert(_expression(_scaled(a), vrs) >= 0)
    for e in equations:
        if not is_zero_vector(e):
            cs.insert(_expression(_scaled(e), vrs) == 0)
    cone.add_constraints(cs)
    return cone


def _generator_polyhedron(dim: int, generators: Sequence[Vector], lineality: Sequence[Vector]) -> "ppl.C_Polyhedron":
    """원점 + 광선 + 직선으로 생성되는 PPL 다면체."""
    cone = ppl.C_Polyhedron(dim, "empty")
    vrs = [ppl.Variable(i) for i in range(dim)]
    gs = ppl.Generator_System()
    gs.insert(ppl.point())
    for r in generators:
        if not is_zero_vector(r):
            gs.insert(ppl.ray(_expression(_scaled(r), vrs)))
    for l in lineality:
        if not is_zero_vector(l):
            gs.insert(ppl.line(_expression(_scaled(l), vrs)))
    cone.add_generators(gs)
    return cone


def _split_generators(cone: "ppl.C_Polyhedron", dim: int) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    rays, lines = [], []
    for gen in cone.minimized_generators():
        if gen.is_ray():
            rays.append(_coefficients(gen, dim))
        elif gen.is_line():
            lines.append(_coefficients(gen, dim))
    return rays, lines


def _split_constraints(cone: "ppl.C_Polyhedron", dim: int) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    ineqs, eqs = [], []
    for cstr in cone.minimized_constraints():
        coeffs = _coefficients(cstr, dim)
        if not any(coeffs):
            continue
        (eqs if cstr.is_equality() else ineqs).append(coeffs)
    return ineqs, eqs


# ──────────────────────────────────────────────────────────────
# PolyCone
# ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PolyCone:
    """이중 기술을 갖는 유리 다면체 뿔.

    rays/lineality 가 생성자 쪽, inequalities/equations 가 면 쪽 기술이다.
    두 기술은 같은 집합을 정의하며 둘 다 최소·표준형으로 저장된다.
    """

    ambient_dim: int
    rays: Tuple[Vector, ...]
    lineality: Tuple[Vector, ...]
    inequalities: Tuple[Vector, ...]
    equations: Tuple[Vector, ...]

    # ── 생성 ──────────────────────────────────────────────
    @classmethod
    def _from_polyhedron(cls, dim: int, cone: "ppl.C_Polyhedron") -> "PolyCone":
        rays, lin = _canonical_pair(dim, *_split_generators(cone, dim))
        facets, eqs = _canonical_pair(dim, *_split_constraints(cone, dim))
        return cls(dim, rays, lin, facets, eqs)

    @classmethod
    def from_generators(cls, dim: int, generators: Iterable[Sequence], lineality: Iterable[Sequence] = ()) -> "PolyCone":
        gens = [as_vector(g) for g in generators]
        lins = [as_vector(l) for l in lineality]
        cls._check_dims(dim, gens + lins)
        return cls._from_polyhedron(dim, _generator_polyhedron(dim, gens, lins))

    @classmethod
    def from_inequalities(cls, dim: int, inequalities: Iterable[Sequence], equations: Iterable[Sequence] = ()) -> "PolyCone":
        ineqs = [as_vector(a) for a in inequalities]
        eqs = [as_vector(e) for e in equations]
        cls._check_dims(dim, ineqs + eqs)
        return cls._from_polyhedron(dim, _constraint_polyhedron(dim, ineqs, eqs))

    @classmethod
    def zero(cls, dim: int) -> "PolyCone":
        return cls.from_generators(dim, [])

    @staticmethod
    def _check_dims(dim: int, vectors: Sequence[Vector]) -> None:
        for v in vectors:
            if len(v) != dim:
                raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {dim}")

    # ── 기본 질의 ──────────────────────────────────────────
    @property
    def generators(self) -> Tuple[Vector, ...]:
        return self.rays

    @property
    def facet_normals(self) -> Tuple[Vector, ...]:
        """부등식 법선 + 등식의 ±n 쌍."""
        pairs = tuple(v for e in self.equations for v in (e, tuple(-a for a in e)))
        return self.inequalities + pairs

    @property
    def dimension(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_strongly_convex(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, x: Sequence) -> bool:
        x = as_vector(x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatchError(f"point of length {len(x)} in ambient dimension {self.ambient_dim}")
        return all(dot(a, x) >= 0 for a in self.inequalities) and all(dot(e, x) == 0 for e in self.equations)

    def contains_cone(self, other: "PolyCone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains(tuple(-a for a in l)) for l in other.lineality
        )

    def same_set(self, other: "PolyCone") -> bool:
        """상호 포함으로 집합 동일성 판정."""
        return self.ambient_dim == other.ambient_dim and self.contains_cone(other) and other.contains_cone(self)

    def is_extremal(self, x: Sequence) -> bool:
        """x 가 극선을 생성하는지: x ∈ C, x ≠ 0, 활성 면 법선의 랭크 = dim C − 1."""
        x = as_vector(x)
        if is_zero_vector(x) or not self.contains(x) or not self.is_strongly_convex:
            return False
        active = [a for a in self.inequalities if dot(a, x) == 0]
        return rank(active + list(self.equations), self.ambient_dim) == self.ambient_dim - 1

    def __repr__(self) -> str:
        return (
            f"PolyCone(dim={self.ambient_dim}, rays={len(self.rays)}, lineality={len(self.lineality)}, "
            f"facets={len(self.inequalities)}, equations={len(self.equations)})"
        )


def dual_cone(C: PolyCone) -> PolyCone:
    """{y : ⟨y,x⟩ ≥ 0 ∀ x ∈ C}. 이중 기술의 두 쪽을 맞바꾸면 된다."""
    return PolyCone(C.ambient_dim, C.inequalities, C.equations, C.rays, C.lineality)


def extremal_rays(C: PolyCone) -> List[Vector]:
    if not C.is_strongly_convex:
        raise NotStronglyConvexError("cone not strongly convex")
    return sorted(C.rays)


def cone_intersection(C1: PolyCone, C2: PolyCone) -> PolyCone:
    if C1.ambient_dim != C2.ambient_dim:
        raise DimensionMismatchError(f"cannot intersect cones in dimensions {C1.ambient_dim} and {C2.ambient_dim}")
    return PolyCone.from_inequalities(
        C1.ambient_dim, C1.inequalities + C2.inequalities, C1.equations + C2.equations
    )


def intersect_all(dim: int, cones: Sequence[PolyCone]) -> PolyCone:
    ineqs: List[Vector] = []
    eqs: List[Vector] = []
    for C in cones:
        if C.ambient_dim != dim:
            raise DimensionMismatchError(f"cone in dimension {C.ambient_dim}, expected {dim}")
        ineqs.extend(C.inequalities)
        eqs.extend(C.equations)
    return PolyCone.from_inequalities(dim, ineqs, eqs)


def conical_hull_sum(C1: PolyCone, C2: PolyCone) -> PolyCone:
    if C1.ambient_dim != C2.ambient_dim:
        raise DimensionMismatchError(f"cannot add cones in dimensions {C1.ambient_dim} and {C2.ambient_dim}")
    return PolyCone.from_generators(C1.ambient_dim, C1.rays + C2.rays, C1.lineality + C2.lineality)


def sum_all(dim: int, cones: Sequence[PolyCone]) -> PolyCone:
    gens: List[Vector] = []
    lins: List[Vector] = []
    for C in cones:
        if C.ambient_dim != dim:
            raise DimensionMismatchError(f"cone in dimension {C.ambient_dim}, expected {dim}")
        gens.extend(C.rays)
        lins.extend(C.lineality)
    return PolyCone.from_generators(dim, gens, lins)


def contains(C: PolyCone, x: Sequence) -> bool:
    return C.contains(x)


# ──────────────────────────────────────────────────────────────
# Polytope
# ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Face:
    """폴리토프의 면: 꼭짓점 인덱스 집합 + 지지 초평면 ⟨normal,x⟩ + offset ≥ 0 (면 위에서 = 0)."""

    vertices: FrozenSet[int]
    normal: Vector
    offset: Fraction
    dim: int


@dataclass(frozen=True)
class Polytope:
    """꼭짓점과 면 격자를 갖는 폴리토프. 비어 있으면 vertices = ()."""

    ambient_dim: int
    vertices: Tuple[Vector, ...]
    facets: Tuple[Tuple[Vector, Fraction], ...]
    equations: Tuple[Tuple[Vector, Fraction], ...]
    faces: Tuple[Face, ...] = field(default=())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty else self.ambient_dim - len(self.equations)

    def faces_of_dim(self, d: int) -> List[Face]:
        return [f for f in self.faces if f.dim == d]

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = as_vector(x)
        return all(dot(a, x) + b >= 0 for a, b in self.facets) and all(dot(a, x) + b == 0 for a, b in self.equations)

    def lattice_points(self) -> List[Tuple[int, ...]]:
        """P ∩ Z^d."""
        if self.is_empty:
            return []
        equations = list(self.equations) + [(tuple(-x for x in a), -b) for a, b in self.equations]
        return list(iter_lattice_points(self.vertices, list(self.facets) + equations))


def iter_lattice_points(box_points: Sequence[Sequence], constraints: Sequence[Tuple[Sequence, Fraction]]) -> Iterator[Tuple[int, ...]]:
    """box_points 의 경계 상자 안에서 ⟨a,x⟩ + b ≥ 0 을 모두 만족하는 정수점.

    앞 좌표들은 상자를 훑고, 마지막 좌표는 부등식에서 구간을 직접 계산한다.
    """
    if not box_points:
        return
    d = len(box_points[0])
    if d == 0:
        yield ()
        return
    lows = [math.ceil(min(Fraction(v[i]) for v in box_points)) for i in range(d)]
    highs = [math.floor(max(Fraction(v[i]) for v in box_points)) for i in range(d)]
    if any(lo > hi for lo, hi in zip(lows, highs)):
        return
    # 분모를 곱해 정수 제약으로 바꾼 뒤 정수 나눗셈으로 구간 계산
    scaled = []
    for a, b in constraints:
        scale = denominator_lcm(tuple(a) + (b,))
        scaled.append((tuple(int(Fraction(x) * scale) for x in a), int(Fraction(b) * scale)))
    ranges = [range(lo, hi + 1) for lo, hi in zip(lows[:-1], highs[:-1])]
    for prefix in itertools.product(*ranges):
        lo, hi = lows[-1], highs[-1]
        for a, b in scaled:
            # a_last·x_last ≥ −b − Σ a_i prefix_i
            bound = -b - sum(a[i] * prefix[i] for i in range(d - 1))
            coef = a[-1]
            if coef > 0:
                lo = max(lo, -((-bound) // coef))
            elif coef < 0:
                hi = min(hi, bound // coef)
            elif bound > 0:
                hi = lo - 1
            if lo > hi:
                break
        for last in range(lo, hi + 1):
            yield tuple(prefix) + (last,)




def _polytope_from_polyhedron(poly: "ppl.C_Polyhedron", d: int) -> Polytope:
    if poly.is_empty():
        return Polytope(d, (), (), ())
    vertices = []
    for gen in poly.minimized_generators():
        if not gen.is_point():
            raise ValueError("polyhedron is unbounded")
        div = int(gen.divisor())
        vertices.append(tuple(Fraction(c, div) for c in _coefficients(gen, d)))
    ineqs, eqs = [], []
    for cstr in poly.minimized_constraints():
        row = _coefficients(cstr, d) + (int(cstr.inhomogeneous_term()),)
        if not any(row[:-1]):
            continue
        (eqs if cstr.is_equality() else ineqs).append(row)
    # 등식을 법으로 환원한 뒤 상수만 남는 부등식은 면이 아님
    rows, basis = _canonical_pair(d + 1, ineqs, eqs)
    facets = tuple((r[:-1], r[-1]) for r in rows if not is_zero_vector(r[:-1]))
    equations = tuple((e[:-1], e[-1]) for e in basis)
    vertices = tuple(sorted(vertices))
    return Polytope(d, vertices, facets, equations, _face_lattice(vertices, facets, equations, d))


def _face_lattice(vertices: Tuple[Vector, ...], facets, equations, d: int) -> Tuple[Face, ...]:
    """면 격자: 패싯 꼭짓점 집합들의 교집합 폐포 (빈 면 제외)."""
    n_vertices = len(vertices)
    facet_sets: Dict[FrozenSet[int], Tuple[Vector, Fraction]] = {}
    for a, b in facets:
        on = frozenset(i for i, v in enumerate(vertices) if dot(a, v) + b == 0)
        if on:
            facet_sets[on] = (a, b)
    full = frozenset(range(n_vertices))
    faces: Dict[FrozenSet[int], Tuple[Vector, Fraction]] = {full: (tuple([Fraction(0)] * d), Fraction(0))}
    frontier = {s: h for s, h in facet_sets.items() if s != full}
    faces.update(frontier)
    while frontier:
        new: Dict[FrozenSet[int], Tuple[Vector, Fraction]] = {}
        for s1, (a1, b1) in frontier.items():
            for s2, (a2, b2) in facet_sets.items():
                s = s1 & s2
                if s and s not in faces and s not in new:
                    new[s] = (tuple(x + y for x, y in zip(a1, a2)), b1 + b2)
        faces.update(new)
        frontier = new
    result = []
    for s, (a, b) in faces.items():
        pts = [vertices[i] for i in sorted(s)]
        base = pts[0]
        dim = rank([tuple(x - y for x, y in zip(p, base)) for p in pts[1:]], d) if len(pts) > 1 else 0
        result.append(Face(s, a, b, dim))
    result.sort(key=lambda f: (f.dim, sorted(f.vertices)))
    return tuple(result)


def polytope_faces(points: Sequence[Sequence]) -> Polytope:
    """점들의 볼록 껍질 (중복·내부 점은 꼭짓점 목록에서 제외)."""
    pts = [as_vector(p) for p in points]
    if not pts:
        raise ValueError("at least one point is required")
    d = len(pts[0])
    vrs = [ppl.Variable(i) for i in range(d)]
    gs = ppl.Generator_System()
    for p in pts:
        scale = denominator_lcm(p)
        gs.insert(ppl.point(_expression(_scaled(p), vrs), scale))
    poly = ppl.C_Polyhedron(d, "empty")
    poly.add_generators(gs)
    return _polytope_from_polyhedron(poly, d)


def polytope_from_inequalities(d: int, inequalities: Sequence[Tuple[Sequence, Fraction]]) -> Polytope:
    """{x : ⟨a,x⟩ + b ≥ 0}. 유계가 아니면 ValueError."""
    vrs = [ppl.Variable(i) for i in range(d)]
    poly = ppl.C_Polyhedron(d, "universe")
    cs = ppl.Constraint_System()
    for a, b in inequalities:
        row = _scaled(tuple(as_vector(a)) + (Fraction(b),))
        cs.insert(_expression(row[:-1], vrs) + row[-1] >= 0)
    poly.add_constraints(cs)
    return _polytope_from_polyhedron(poly, d)


def vertex_index_map(polytope: Polytope, points: Sequence[Sequence]) -> Dict[int, int]:
    """입력 점 인덱스 → 꼭짓점 인덱스 (꼭짓점이 된 점만)."""
    lookup = {v: i for i, v in enumerate(polytope.vertices)}
    result = {}
    for j, p in enumerate(points):
        key = as_vector(p)
        if key in lookup:
            result[j] = lookup[key]
    return result
