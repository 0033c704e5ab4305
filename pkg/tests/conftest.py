"""Shared fixtures: the worked three-agent instance used across the suite."""

from __future__ import annotations

import pytest

from chorefair import Additive, Allocation, Instance

# Three agents, seven chores; the running example for all exact spot checks.
REFERENCE_COSTS = (
    (2, 3, 3, 0, 4, 2, 1),
    (3, 1, 3, 2, 5, 0, 5),
    (1, 5, 10, 2, 3, 1, 3),
)


@pytest.fixture(scope="session")
def ref_instance() -> Instance:
    return Instance(n=3, m=7, costs=tuple(Additive(row) for row in REFERENCE_COSTS))


@pytest.fixture(scope="session")
def alloc_a() -> Allocation:
    return Allocation((frozenset({0, 3, 6}), frozenset({1, 2, 5}), frozenset({4})))


@pytest.fixture(scope="session")
def alloc_b() -> Allocation:
    return Allocation((frozenset({0, 4, 6}), frozenset({1, 3, 5}), frozenset({2})))
