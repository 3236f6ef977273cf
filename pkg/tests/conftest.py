"""Shared helpers: terse constructors for coordinates and expressions."""

import random

import pytest

from lieremark.jetspace import coord_u, coord_ud, coord_x
from lieremark.ratexpr import RatExpr
from lieremark.vfield import VectorField


def X(i):
    return RatExpr.coord(coord_x(i))


def U(a):
    return RatExpr.coord(coord_u(a))


def UD(a, *J):
    return RatExpr.coord(coord_ud(a, tuple(sorted(J))))


def field(n, m, components):
    """VectorField from {coord: expr}."""
    return VectorField.from_components(n, m, components)


@pytest.fixture
def rng():
    return random.Random(20190314)
