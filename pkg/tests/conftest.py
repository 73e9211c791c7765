import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from altgfg.games import ADAM, EVE, Game
from altgfg.conditions import Parity

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=600, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def parity_games(draw, max_positions=5, max_out=2, max_priority=3, tracks=1):
    """Total games with integer-vector labels on every edge."""
    n = draw(st.integers(1, max_positions))
    owner = tuple(draw(st.sampled_from([EVE, ADAM])) for _ in range(n))
    edges = []
    for v in range(n):
        for _ in range(draw(st.integers(1, max_out))):
            lab = tuple(draw(st.integers(0, max_priority)) for _ in range(tracks))
            edges.append((v, lab, draw(st.integers(0, n - 1))))
    return Game(owner, tuple(edges), 0, Parity(0))


CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[number])
