import sys
import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from symba.finvec import FinVec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LABELS = [f"g{i}" for i in range(16)]


def rationals(max_den=12, max_num=40, nonzero=False):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return s.filter(lambda v: v != 0) if nonzero else s


@st.composite
def finvecs(draw, max_size=12, min_size=0, positive=False):
    n = draw(st.integers(min_size, max_size))
    labels = draw(st.permutations(LABELS))[:n]
    vals = draw(st.lists(rationals(nonzero=True), min_size=n, max_size=n))
    if positive:
        vals = [abs(v) for v in vals]
    return FinVec(dict(zip(labels, vals)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
