"""Shared fixtures: the four-subsystem worked example used across suites."""

import pytest

from ctrltopo import CompositeInstance, SparsityPattern, Subsystem


def make_quad_instance(weights=None, modes=None):
    """Four interconnected subsystems with a single actuated leader.

    Subsystem 0 has three states and one input; 1 and 3 are small chains;
    2 is a three-state loop.  Communication: 0 may send to 2, 1 to 0,
    2 to 1 and 3.  In isolation only subsystem 0 is controllable, so any
    controllable composite needs cross-subsystem interconnections.
    """
    s0 = Subsystem(
        index=0,
        a_pattern=SparsityPattern(3, 3, [(1, 0), (2, 0), (2, 2)]),
        b_pattern=SparsityPattern(3, 1, [(0, 0)]),
    )
    s1 = Subsystem(
        index=1,
        a_pattern=SparsityPattern(2, 2, [(0, 1), (1, 0)]),
        b_pattern=SparsityPattern(2, 0, []),
    )
    s2 = Subsystem(
        index=2,
        a_pattern=SparsityPattern(3, 3, [(0, 1), (1, 0), (1, 2), (2, 1)]),
        b_pattern=SparsityPattern(3, 0, []),
    )
    s3 = Subsystem(
        index=3,
        a_pattern=SparsityPattern(2, 2, [(1, 0)]),
        b_pattern=SparsityPattern(2, 0, []),
    )
    return CompositeInstance(
        subsystems=(s0, s1, s2, s3),
        neighbors={0: [2], 1: [0], 2: [1, 3], 3: []},
        weights=weights,
        modes=modes,
    )


@pytest.fixture
def quad():
    return make_quad_instance()
