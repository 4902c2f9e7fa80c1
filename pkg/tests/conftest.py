import pytest
from hypothesis import HealthCheck, settings

from pierce_gldim import generators
from pierce_gldim.linalg import GF, QQ

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(params=["Q", "F5"])
def field(request):
    return QQ if request.param == "Q" else GF(5)


@pytest.fixture(scope="session")
def ex2():
    return generators.example2()


@pytest.fixture(scope="session")
def ex3():
    return generators.example3()


@pytest.fixture(scope="session")
def anick_green():
    return generators.anick_green()
