"""극선 분해, 정리 검증, dim B(D) < k 판정 테스트."""
import random
from fractions import Fraction

import pytest

from app.models.errors import NotExtremalError
from app.services.classes_service import amp_dual_cone, mov_cone, pair
from app.services.construct_service import verify_small_modification
from app.services.fan_service import adjacent_rays, validate_fan
from app.services.theorem_service import (
    check_natural_inclusions,
    decompose_extremal_ray,
    modification_mov_sum,
    stable_base_locus_dim_test,
    strict_inclusion_witness,
    verify_theorem,
)
from conftest import C_EXAMPLE


def test_flop_realization(example_fan):
    d = decompose_extremal_ray(example_fan, 1, C_EXAMPLE)
    assert d.sigma == (6,)
    assert d.tau == (6,)
    assert d.swept_dimension == 2
    assert d.modification is not None
    assert not d.modification.is_trivial
    assert verify_small_modification(d.modification) == []

    target = d.target_fan
    assert validate_fan(target).ok
    assert {0, 1, 2} <= set(adjacent_rays(target, (6,)))
    assert d.witness.class_matches_target()
    assert d.witness.body.quotient.quotient_fan.num_rays == 6


def test_decomposition_without_negative_coefficients(p2):
    d = decompose_extremal_ray(p2, 0, (1, 1, 1))
    assert d.tau == ()
    assert d.modification is None
    assert d.swept_dimension == 2
    assert d.target_fan is p2


def test_non_extremal_class_is_rejected(example_fan):
    # c 와 다른 극선의 합은 Amp¹∨ 의 내부 쪽 류
    other = next(r for r in amp_dual_cone(example_fan, 1).rays if tuple(r) != C_EXAMPLE)
    interior = tuple(a + b for a, b in zip(C_EXAMPLE, other))
    with pytest.raises(NotExtremalError, match="not extremal"):
        decompose_extremal_ray(example_fan, 1, interior)


def test_decompose_rejects_non_curve_class(example_fan):
    with pytest.raises(NotExtremalError, match="not a curve class"):
        decompose_extremal_ray(example_fan, 1, (1, 0, 0, 0, 0, 0, 0, 0))


def test_decompose_level_range(example_fan):
    with pytest.raises(ValueError):
        decompose_extremal_ray(example_fan, 3, C_EXAMPLE)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_theorem_on_example(example_fan, k):
    report = verify_theorem(example_fan, k, show_progress=False)
    assert report.verdict == "verified", report.failures
    assert report.natural_inclusions
    assert all(d.swept_dimension >= k for d in report.decompositions)
    assert all(m.amp1_invariant is not False for m in report.modification_checks)
    assert modification_mov_sum(example_fan, report).same_set(amp_dual_cone(example_fan, 3 - k))


def test_theorem_needs_the_flop_at_k2(example_fan):
    report = verify_theorem(example_fan, 2, show_progress=False)
    assert C_EXAMPLE in [tuple(c) for c in report.strict_inclusion_rays]
    assert any(not m.modification.is_trivial for m in report.modification_checks)


def test_toric_bdpp_case(example_fan):
    # k = n: Amp⁰∨ 의 모든 극선은 τ = 0 에서 분해된다
    report = verify_theorem(example_fan, 3, show_progress=False)
    assert report.verified
    assert all(d.tau == () for d in report.decompositions)
    assert report.strict_inclusion_rays == []


def test_theorem_on_builtins(any_builtin):
    for k in range(1, any_builtin.rank + 1):
        report = verify_theorem(any_builtin, k, show_progress=False)
        assert report.verified, (any_builtin.name, k, report.failures)


def test_theorem_level_range(p2):
    with pytest.raises(ValueError):
        verify_theorem(p2, 0, show_progress=False)
    with pytest.raises(ValueError):
        verify_theorem(p2, 3, show_progress=False)


def test_natural_inclusions(example_fan):
    for k in (1, 2, 3):
        assert check_natural_inclusions(example_fan, k)


def test_strict_inclusion_witness(example_fan, p2):
    assert C_EXAMPLE in [tuple(c) for c in strict_inclusion_witness(example_fan, 2)]
    assert not mov_cone(example_fan, 2).contains(C_EXAMPLE)
    assert strict_inclusion_witness(p2, 1) == []


def test_base_locus_dimension_counterexample(f1):
    test = stable_base_locus_dim_test(f1, (0, 0, 0, 1), 1)
    assert not test.holds
    assert test.subvariety_cone == (3,)
    assert test.swept_cone == (3,)
    assert test.intersection == Fraction(-1)
    assert test.decomposition.c == (1, 1, 0, -1)
    assert test.decomposition.modification.is_trivial
    assert test.decomposition.witness.tau == (3,)


def test_base_locus_dimension_holds(f1, p2):
    assert stable_base_locus_dim_test(f1, (0, 0, 0, 1), 2).holds
    assert stable_base_locus_dim_test(p2, (1, 0, 0), 1).holds
    # 유효하지 않은 인자는 X 전체가 기저 궤적
    assert not stable_base_locus_dim_test(p2, (-1, 0, 0), 2).holds


@pytest.mark.parametrize("seed", [5])
def test_base_locus_dimension_matches_mov_sum(any_builtin, seed):
    rng = random.Random(seed)
    divisors = [tuple(rng.randint(-2, 2) for _ in range(any_builtin.num_rays)) for _ in range(6)]
    for k in range(1, any_builtin.rank + 1):
        report = verify_theorem(any_builtin, k, show_progress=False)
        C = modification_mov_sum(any_builtin, report)
        generators = list(C.rays) + list(C.lineality) + [tuple(-x for x in l) for l in C.lineality]
        for d in divisors:
            test = stable_base_locus_dim_test(any_builtin, d, k)
            assert test.holds == all(pair(d, g) >= 0 for g in generators), (any_builtin.name, k, d)
            if not test.holds:
                assert test.intersection < 0
                assert pair(d, test.decomposition.c) == test.intersection
                assert test.swept_cone == test.decomposition.tau
                assert test.swept_cone in any_builtin.cones
                assert test.swept_cone in test.decomposition.target_fan.cones
                assert len(test.subvariety_cone) == any_builtin.rank - k


def test_base_locus_dimension_level_range(p2):
    with pytest.raises(ValueError):
        stable_base_locus_dim_test(p2, (1, 0, 0), 0)
