import numpy as np
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def disk_points(rmax=0.95):
    """Complex numbers with modulus below ``rmax``."""
    return st.builds(
        lambda r, t: r * np.exp(1j * t),
        st.floats(0.0, rmax), st.floats(-np.pi, np.pi),
    )


def polydisk_points(n, rmax=0.95):
    return st.lists(disk_points(rmax), min_size=n, max_size=n).map(
        lambda v: np.array(v, dtype=complex))


def unimodular():
    return st.floats(-np.pi, np.pi).map(lambda t: complex(np.exp(1j * t)))
