"""팬 검증, 조합 질의, 별 세분, 몫 팬 테스트."""
import pytest

from app.models.errors import FanValidationError
from app.models.fan import Fan
from app.services.classes_service import gamma_cone, movable_piece
from app.services.construct_service import check_curve_conditions
from app.services.fan_service import (
    adjacent_rays,
    cones_of_dim,
    quotient_fan,
    require_cone,
    star_subdivision,
    validate_fan,
)

P2_RAYS = ((1, 0), (0, 1), (-1, -1))


def test_builtin_fans_are_valid(any_builtin):
    report = validate_fan(any_builtin)
    assert report.ok, report.failures()


def test_incompatible_cones_are_reported():
    F = Fan(2, P2_RAYS + ((1, 1),), ((0, 1), (0, 3), (1, 2), (0, 2)))
    report = validate_fan(F)
    assert not report.compatible
    assert "compatible" in report.failures()


def test_missing_cone_is_not_complete():
    F = Fan(2, P2_RAYS, ((0, 1), (1, 2)))
    report = validate_fan(F)
    assert report.rays_primitive and report.simplicial and report.compatible
    assert not report.complete


def test_non_simplicial_cone():
    F = Fan(2, P2_RAYS, ((0, 1, 2),))
    assert not validate_fan(F).simplicial


def test_non_primitive_ray():
    F = Fan(2, ((2, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
    report = validate_fan(F)
    assert not report.rays_primitive
    assert not report.ok
    assert report.offending["rays"] == [0]


def test_duplicate_ray_is_a_structural_failure():
    F = Fan(2, P2_RAYS + ((1, 0),), ((0, 1), (1, 2), (0, 2), (2, 3)))
    report = validate_fan(F)
    assert not report.well_formed
    assert report.rays_primitive
    assert report.simplicial is None and report.compatible is None and report.complete is None
    assert report.failures() == ["well_formed"]
    assert report.unchecked() == ["simplicial", "compatible", "complete"]
    assert report.offending["duplicate_rays"] == [[0, 3]]
    assert not report.ok


def test_unused_ray_is_reported_separately():
    F = Fan(2, P2_RAYS + ((1, 1),), ((0, 1), (1, 2), (0, 2)))
    report = validate_fan(F)
    assert report.offending == {"unused_rays": [3]}
    assert report.failures() == ["well_formed"]


def test_require_cone_guard_is_shared(p2):
    assert require_cone(p2, (1, 0)) == (0, 1)
    for call in (
        lambda t: require_cone(p2, t),
        lambda t: gamma_cone(p2, t),
        lambda t: movable_piece(p2, t),
        lambda t: check_curve_conditions(p2, t, (1, 1, 1)),
    ):
        with pytest.raises(FanValidationError, match=r"\[0, 1, 2\] is not a cone of the fan"):
            call((2, 1, 0))


def test_cone_counts_of_example(example_fan):
    assert example_fan.num_rays == 8
    assert len(cones_of_dim(example_fan, 0)) == 1
    assert len(cones_of_dim(example_fan, 1)) == 8
    assert len(cones_of_dim(example_fan, 2)) == 18
    assert len(cones_of_dim(example_fan, 3)) == 12
    with pytest.raises(ValueError):
        cones_of_dim(example_fan, 4)


def test_adjacent_rays(example_fan):
    assert adjacent_rays(example_fan, (6,)) == [3, 4, 5, 6]
    assert adjacent_rays(example_fan, (0, 3)) == [0, 3, 4, 7]
    assert adjacent_rays(example_fan, (7,)) == [0, 1, 2, 3, 4, 5, 7]
    assert adjacent_rays(example_fan, ()) == list(range(8))
    with pytest.raises(FanValidationError):
        adjacent_rays(example_fan, (0, 6))


def test_locate(p2):
    assert p2.locate((1, 1)) == (0, 1)
    assert p2.locate((-3, 1)) == (1, 2)


def test_star_subdivision_of_p2_is_f1(p2, f1):
    blown_up = star_subdivision(p2, (1, 1))
    assert blown_up == f1
    assert blown_up.divisor_basis is None
    assert validate_fan(blown_up).ok


def test_star_subdivision_inside_a_cone(p1p1):
    F = star_subdivision(p1p1, (2, 1))
    assert F.num_rays == 5
    assert len(F.max_cones) == 5
    assert validate_fan(F).ok


def test_star_subdivision_on_a_wall(p1p1p1):
    # (1,1,0) 은 벽 ⟨e1, e2⟩ 위에 있어 두 극대 뿔을 각각 둘로 나눈다
    F = star_subdivision(p1p1p1, (1, 1, 0))
    assert len(F.max_cones) == 10
    assert F.is_cone((0, 6)) and F.is_cone((1, 6))
    assert not F.is_cone((0, 1))
    assert validate_fan(F).ok


def test_star_subdivision_rejects_existing_ray(p2):
    with pytest.raises(FanValidationError):
        star_subdivision(p2, (2, 0))


def test_star_subdivision_outside_support():
    F = Fan(2, P2_RAYS, ((0, 1),))
    with pytest.raises(FanValidationError):
        star_subdivision(F, (-1, 1))


def test_quotient_at_bottom_ray_is_p2(example_fan):
    q = quotient_fan(example_fan, (6,))
    assert q.quotient_rank == 2
    assert set(q.quotient_fan.rays) == {(0, 1), (1, 0), (-1, -1)}
    assert sorted(q.ray_map) == [3, 4, 5]
    assert all(img.multiplier == 1 for img in q.ray_map.values())
    assert validate_fan(q.quotient_fan).ok


def test_quotient_at_top_ray_has_six_rays(example_fan):
    q = quotient_fan(example_fan, (7,))
    assert q.quotient_fan.num_rays == 6
    assert len(q.quotient_fan.max_cones) == 6
    assert validate_fan(q.quotient_fan).ok
    for i, img in q.ray_map.items():
        assert q.source_index(img.index) == i


def test_quotient_at_zero_cone_is_identity(p2):
    q = quotient_fan(p2, ())
    assert q.quotient_fan.rays == p2.rays
    assert q.quotient_fan.max_cones == p2.max_cones
