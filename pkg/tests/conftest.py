"""공용 픽스처: 내장 팬과 예제 팬의 플롭(flop) 팬."""
from fractions import Fraction

import pytest

from app.config.builtin_fans import BUILTIN_FANS
from app.models.fan import Fan
from app.utils.parser import builtin_fan

# 예제 팬에서 Amp¹∨ 의 극선 (1-based 로 D_1..D_3 에 1, D_7 에 −3)
C_EXAMPLE = tuple(Fraction(x) for x in (1, 1, 1, 0, 0, 0, -3, 0))

# ρ_7 (0-based 6) 주위 여섯 뿔과 ρ_8 주위 여섯 뿔
FLOP_CONES = (
    (0, 3, 6), (0, 4, 6), (1, 4, 6), (1, 5, 6), (2, 5, 6), (2, 3, 6),
    (0, 3, 7), (0, 4, 7), (1, 4, 7), (1, 5, 7), (2, 5, 7), (2, 3, 7),
)


@pytest.fixture(scope="session")
def p2() -> Fan:
    return builtin_fan("p2")


@pytest.fixture(scope="session")
def p1p1() -> Fan:
    return builtin_fan("p1p1")


@pytest.fixture(scope="session")
def p1p1p1() -> Fan:
    return builtin_fan("p1p1p1")


@pytest.fixture(scope="session")
def f1() -> Fan:
    return builtin_fan("f1")


@pytest.fixture(scope="session")
def example_fan() -> Fan:
    return builtin_fan("paper-example")


@pytest.fixture(scope="session")
def flop_fan(example_fan) -> Fan:
    return Fan(3, example_fan.rays, FLOP_CONES, "example-flop", example_fan.divisor_basis)


@pytest.fixture(scope="session", params=sorted(BUILTIN_FANS))
def any_builtin(request) -> Fan:
    return builtin_fan(request.param)
