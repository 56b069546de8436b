import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite", derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow], deadline=None)
settings.load_profile("suite")


@pytest.fixture
def desk_params():
    from qmem.builders import AlgoParams

    return AlgoParams(n=6, n_e=6, w_e=3, w_m=2, m=4)


@pytest.fixture
def desk_instance():
    from qmem.builders import ProblemInstance

    return ProblemInstance(N=35, g=2)
