"""Shared fixtures: the exhaustive-simulation results reused across tests.

The full sweep over l = 1..10 for both strategies is the single most
expensive artifact in the suite (about half a million executions at
l = 10), so it is computed once per session and shared by every acceptance
criterion that consumes it.
"""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from coinweigh import verify

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

ACCEPTANCE_L_MAX = 10


@pytest.fixture(scope="session")
def full_stats():
    """StatsRow for every (l, strategy) with l = 1..10, keyed by that pair.

    Building a row executes the strategy on every configuration and
    re-verifies each recorded outcome, so merely constructing this fixture
    proves recovery correctness for the whole range.
    """
    return {
        (l, strategy): verify.exhaustive_stats(1 << l, strategy)
        for l in range(1, ACCEPTANCE_L_MAX + 1)
        for strategy in ("proposed", "nested")
    }
