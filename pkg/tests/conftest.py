"""Shared fixtures: small hand-checkable functions used across the suite."""

import numpy as np
import pytest

from lulukit import Domain, PiecewiseLinearFunction


@pytest.fixture
def f1():
    """Open unit block pulse on [0, 4]: value 1 on the open interval (1, 2),
    value 0 everywhere else including at x=1 and x=2."""
    return PiecewiseLinearFunction(
        Domain(0.0, 4.0),
        [0.0, 1.0, 2.0, 4.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
    )


@pytest.fixture
def g1():
    """Closed unit block pulse on [0, 4]: value 1 on [1, 2] endpoints included."""
    return PiecewiseLinearFunction(
        Domain(0.0, 4.0),
        [0.0, 1.0, 2.0, 4.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
    )


@pytest.fixture
def ident():
    """x maps to x on [0, 4]."""
    return PiecewiseLinearFunction.from_points([(0.0, 0.0), (4.0, 4.0)])


@pytest.fixture
def tent():
    """Narrow tent: flat, up over [1, 1.2], down over [1.2, 1.4], flat."""
    return PiecewiseLinearFunction.from_points(
        [(0.0, 0.0), (1.0, 0.0), (1.2, 1.0), (1.4, 0.0), (4.0, 0.0)]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
