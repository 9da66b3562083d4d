"""인자류 / 곡선류, Γ_τ 와 Amp^k, Mov_k, 안정 기저 궤적 테스트."""
import random
from fractions import Fraction

import pytest

from app.models.classes import CycleClass, DivisorClass
from app.models.errors import FanValidationError
from app.models.fan import Fan
from app.services.classes_service import (
    amp_cone,
    amp_dual_cone,
    base_locus_finite,
    class_spaces,
    divisor_polytope,
    gamma_cone,
    gamma_dual_cone,
    mori_cone,
    mov_cone,
    mov_cone_via,
    nef_cone_from_walls,
    pair,
    ray_permutation,
    section_points,
    stable_base_locus,
    wall_curve_class,
    wall_curve_classes,
)
from app.utils.polyhedra import extremal_rays
from app.utils.ratlinalg import determinant
from conftest import C_EXAMPLE


def _unit(r, i):
    return tuple(1 if j == i else 0 for j in range(r))


def test_example_picard_rank_and_basis(example_fan):
    spaces = class_spaces(example_fan)
    assert spaces.picard_rank == 5
    assert spaces.basis_indices == (0, 1, 2, 6, 7)
    gens = spaces.divisor_generators
    assert determinant([gens[i] for i in spaces.basis_indices]) != 0


def test_greedy_basis_without_pin(example_fan):
    unpinned = Fan(3, example_fan.rays, example_fan.max_cones)
    assert class_spaces(unpinned).basis_indices == (3, 4, 5, 6, 7)


def test_principal_divisors_have_zero_class(any_builtin):
    spaces = class_spaces(any_builtin)
    for k in range(any_builtin.rank):
        principal = [v[k] for v in any_builtin.rays]
        assert all(x == 0 for x in spaces.divisor_coordinates(principal))
        d = [Fraction(j % 3) for j in range(any_builtin.num_rays)]
        shifted = [a + b for a, b in zip(d, principal)]
        assert spaces.same_divisor_class(d, shifted)


def test_coordinates_round_trip(example_fan):
    spaces = class_spaces(example_fan)
    x = (Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(0), Fraction(5))
    assert spaces.divisor_coordinates(spaces.divisor_from_coordinates(x)) == x
    a = spaces.curve_from_dual_coordinates((1, 1, 1, -3, 0))
    assert a == C_EXAMPLE
    assert spaces.curve_dual_coordinates(a) == (1, 1, 1, -3, 0)


def test_pairing_examples(f1, example_fan):
    exceptional_curve = CycleClass(f1, (1, 1, 0, -1))
    assert pair(DivisorClass(f1, (0, 0, 0, 1)), exceptional_curve) == -1
    assert pair(_unit(8, 6), C_EXAMPLE) == -3
    assert pair(_unit(8, 7), C_EXAMPLE) == 0


def test_pairing_is_class_invariant(example_fan):
    rng = random.Random(3)
    for _ in range(20):
        d = [rng.randint(-3, 3) for _ in range(8)]
        u = [rng.randint(-2, 2) for _ in range(3)]
        shifted = [di + sum(a * b for a, b in zip(u, v)) for di, v in zip(d, example_fan.rays)]
        assert pair(d, C_EXAMPLE) == pair(shifted, C_EXAMPLE)


def test_cycle_class_must_satisfy_relation(f1):
    with pytest.raises(FanValidationError):
        CycleClass(f1, (1, 0, 0, 0))


def test_pairing_rejects_mixed_fans(f1, p2):
    with pytest.raises(FanValidationError):
        pair(DivisorClass(p2, (1, 0, 0)), CycleClass(f1, (1, 1, 0, -1)))


def test_wall_classes(f1, example_fan):
    assert wall_curve_class(f1, (3,)) == (1, 1, 0, -1)
    walls = wall_curve_classes(example_fan)
    assert len(walls) == 18
    spaces = class_spaces(example_fan)
    for wall, a in walls.items():
        assert spaces.is_curve_class(a)
        # 벽 밖의 두 광선 계수는 양수
        for sigma in example_fan.max_cones_containing(wall):
            (opposite,) = set(sigma) - set(wall)
            assert a[opposite] > 0


def test_amp_top_level_is_nef_cone(any_builtin):
    n = any_builtin.rank
    assert amp_cone(any_builtin, n - 1).same_set(nef_cone_from_walls(any_builtin))


def test_mori_cone(f1, any_builtin):
    assert extremal_rays(mori_cone(f1)) == [(0, 0, 1, 1), (1, 1, 0, -1)]
    n = any_builtin.rank
    assert mori_cone(any_builtin).same_set(amp_dual_cone(any_builtin, n - 1))


def test_amp_filtration_is_decreasing(any_builtin):
    for k in range(1, any_builtin.rank):
        assert amp_cone(any_builtin, k - 1).contains_cone(amp_cone(any_builtin, k))


def test_mov_filtration_is_decreasing(any_builtin):
    for k in range(1, any_builtin.rank):
        assert mov_cone(any_builtin, k).contains_cone(mov_cone(any_builtin, k + 1))


def test_example_extremal_ray_of_amp1_dual(example_fan):
    assert C_EXAMPLE in extremal_rays(amp_dual_cone(example_fan, 1))
    # Γ_ρ7 의 면 ⟨D4, D5, D6, D8⟩ 의 안쪽 법선
    assert gamma_dual_cone(example_fan, (6,)).is_extremal(C_EXAMPLE)
    for j in (3, 4, 5, 7):
        assert pair(_unit(8, j), C_EXAMPLE) == 0
    for j in (0, 1, 2):
        assert pair(_unit(8, j), C_EXAMPLE) > 0


def test_example_strict_inclusion(example_fan):
    assert amp_dual_cone(example_fan, 1).contains(C_EXAMPLE)
    assert not mov_cone(example_fan, 2).contains(C_EXAMPLE)


def test_p2_mov_equals_amp_dual(p2):
    assert mov_cone(p2, 1).same_set(amp_dual_cone(p2, 1))
    assert extremal_rays(mov_cone(p2, 1)) == [(1, 1, 1)]


def test_mov_via_same_fan(f1):
    assert ray_permutation(f1, f1) == [0, 1, 2, 3]
    assert mov_cone_via(f1, f1, 1).same_set(mov_cone(f1, 1))


def test_mov_via_flop_uses_shared_rays(example_fan, flop_fan):
    assert ray_permutation(example_fan, flop_fan) == list(range(8))
    assert mov_cone_via(example_fan, flop_fan, 2).contains(C_EXAMPLE)


def test_level_and_cone_errors(example_fan):
    with pytest.raises(ValueError):
        amp_cone(example_fan, 3)
    with pytest.raises(ValueError):
        mov_cone(example_fan, 0)
    with pytest.raises(FanValidationError):
        gamma_cone(example_fan, (0, 6))


def test_divisor_polytope_sections(p2):
    P = divisor_polytope(p2, (0, 0, 1))
    assert set(P.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert sorted(section_points(p2, (0, 0, 2))) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    with pytest.raises(ValueError):
        section_points(p2, (0, 0, Fraction(1, 2)))


def test_exceptional_divisor_base_locus(f1):
    locus = stable_base_locus(f1, (0, 0, 0, 1))
    assert locus.member_cones == ((3,),)
    assert locus.dimension == 1
    assert base_locus_finite(f1, (0, 0, 0, 1), m_max=12).member_cones == ((3,),)


def test_ample_and_non_effective_loci(p2):
    assert stable_base_locus(p2, (0, 0, 1)).dimension is None
    whole = stable_base_locus(p2, (0, 0, -1))
    assert whole.member_cones == ((),)
    assert whole.dimension == 2
    assert not whole.dimension_less_than(2)


def test_rational_divisor_base_locus(f1):
    assert stable_base_locus(f1, (0, 0, 0, Fraction(1, 2))).member_cones == ((3,),)


@pytest.mark.parametrize("seed", [11])
def test_stable_base_locus_matches_finite_oracle(any_builtin, seed):
    rng = random.Random(seed)
    for _ in range(100):
        d = [rng.randint(-3, 3) for _ in range(any_builtin.num_rays)]
        expected = base_locus_finite(any_builtin, d, m_max=12)
        assert stable_base_locus(any_builtin, d).member_cones == expected.member_cones, d


def test_base_locus_finite_rejects_bad_input(p2):
    with pytest.raises(ValueError):
        base_locus_finite(p2, (0, 0, 1), m_max=0)
    with pytest.raises(ValueError):
        base_locus_finite(p2, (0, 0, Fraction(1, 2)))


def test_single_point_divisor_polytope(f1):
    # x ≥ 3, y ≥ −1, x + y = 2 → {(3, −1)}
    d = (-3, 1, 2, -2)
    P = divisor_polytope(f1, d)
    assert P.vertices == ((3, -1),)
    assert P.dimension == 0
    assert [f.dim for f in P.faces] == [0]
    assert section_points(f1, d) == [(3, -1)]
    assert base_locus_finite(f1, d, m_max=12).member_cones == stable_base_locus(f1, d).member_cones


def test_mov_via_flop_counts_only_shared_cones(example_fan, flop_fan):
    assert (0, 6) in flop_fan.cones and (0, 6) not in example_fan.cones
    via = mov_cone_via(example_fan, flop_fan, 1)
    assert amp_dual_cone(example_fan, 2).contains_cone(via)
    for flopped in [(-1, 0, 0, 1, 1, 0, -1, 0), (0, -1, 0, 0, 1, 1, -1, 0), (0, 0, -1, 1, 0, 1, -1, 0)]:
        assert not via.contains(flopped)
