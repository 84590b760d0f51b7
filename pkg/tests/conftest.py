import pytest
from hypothesis import settings

from arpsim import PulseSpec, QuantumDot, evolve

# keep property tests reproducible and tolerant of JIT warmup stalls
settings.register_profile("suite", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    # first call pays numba compilation; do it outside any timed test
    evolve(PulseSpec(area=0.5), QuantumDot(transition_energy=1063.0))
