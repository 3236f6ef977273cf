"""Jet-space geometry: coordinates, multi-indices, dimension formulas.

A point of the order-r jet space of n-dimensional graphs in R^(n+m) has
coordinates x_i (independent), u_a (dependent) and u_{a,J} for every
non-decreasing multi-index J of length 1..r.  Coordinate ids are small int
tuples whose natural sort order IS the global enumeration order:

  x_i      -> (0, i)
  u_a      -> (1, a)
  u_{a,J}  -> (2, len(J), a, *J)

so independent variables come first, then dependent ones, then derivative
coordinates by order, then dependent index, then lexicographic multi-index.
The polynomial layer sorts monomials by these keys, which makes its graded
lexicographic order the one induced by this enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import IndexOutOfRange

__all__ = [
    "JetSpec",
    "coord_x",
    "coord_u",
    "coord_ud",
    "is_x",
    "is_u",
    "is_ud",
    "coord_order",
    "ud_parts",
    "x_index",
    "u_index",
    "coord_str",
    "canonicalize_index",
    "dimension",
    "enumerate_coords",
    "algebra_dims",
]

CoordId = tuple  # (0,i) | (1,a) | (2,k,a,*J)
MultiIndex = tuple


@dataclass(frozen=True)
class JetSpec:
    """Shape of a jet space: n independent, m dependent variables, order r."""

    n: int
    m: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.r < 1:
            raise IndexOutOfRange(f"invalid jet specification {self}")


def coord_x(i: int) -> CoordId:
    return (0, i)


def coord_u(alpha: int) -> CoordId:
    return (1, alpha)


def coord_ud(alpha: int, index: MultiIndex) -> CoordId:
    return (2, len(index), alpha) + tuple(index)


def is_x(c: CoordId) -> bool:
    return c[0] == 0


def is_u(c: CoordId) -> bool:
    return c[0] == 1


def is_ud(c: CoordId) -> bool:
    return c[0] == 2


def x_index(c: CoordId) -> int:
    return c[1]


def u_index(c: CoordId) -> int:
    return c[1]


def ud_parts(c: CoordId):
    """(alpha, multi-index) of a derivative coordinate."""
    return c[2], c[3:]


def coord_order(c: CoordId) -> int:
    """Derivative order of the coordinate (0 for x_i and u_a)."""
    return c[1] if c[0] == 2 else 0


def coord_str(c: CoordId) -> str:
    """Grammar rendering: x[i], u[a], u[a; j1,...,jk]."""
    if c[0] == 0:
        return f"x[{c[1]}]"
    if c[0] == 1:
        return f"u[{c[1]}]"
    alpha, index = ud_parts(c)
    return f"u[{alpha};{','.join(str(j) for j in index)}]"


def validate_coord(c: CoordId, spec: JetSpec):
    """Raise IndexOutOfRange when the coordinate does not live in spec."""
    if c[0] == 0:
        if not 1 <= c[1] <= spec.n:
            raise IndexOutOfRange(f"x index {c[1]} outside 1..{spec.n}")
    elif c[0] == 1:
        if not 1 <= c[1] <= spec.m:
            raise IndexOutOfRange(f"u index {c[1]} outside 1..{spec.m}")
    else:
        alpha, index = ud_parts(c)
        if not 1 <= alpha <= spec.m:
            raise IndexOutOfRange(f"u index {alpha} outside 1..{spec.m}")
        if not 1 <= len(index) <= spec.r:
            raise IndexOutOfRange(
                f"derivative order {len(index)} outside 1..{spec.r}"
            )
        for j in index:
            if not 1 <= j <= spec.n:
                raise IndexOutOfRange(f"derivative index {j} outside 1..{spec.n}")


def canonicalize_index(raw, n: int, r: int | None = None) -> MultiIndex:
    """Sort a derivative multi-index; derivatives commute."""
    idx = tuple(raw)
    if not idx:
        raise IndexOutOfRange("empty multi-index")
    if r is not None and len(idx) > r:
        raise IndexOutOfRange(f"multi-index longer than order {r}")
    for j in idx:
        if not isinstance(j, int) or not 1 <= j <= n:
            raise IndexOutOfRange(f"index {j} outside 1..{n}")
    return tuple(sorted(idx))


def dimension(spec: JetSpec) -> int:
    """n + m * C(n+r, r)."""
    return spec.n + spec.m * math.comb(spec.n + spec.r, spec.r)


def enumerate_coords(spec: JetSpec) -> list:
    """All coordinates in the canonical global order."""
    out = [coord_x(i) for i in range(1, spec.n + 1)]
    out.extend(coord_u(a) for a in range(1, spec.m + 1))
    for k in range(1, spec.r + 1):
        for a in range(1, spec.m + 1):
            for index in combinations_with_replacement(range(1, spec.n + 1), k):
                out.append(coord_ud(a, index))
    return out


def algebra_dims(n: int, m: int):
    """(affine, projective) symmetry-algebra dimensions of R^(n+m)."""
    if n < 1 or m < 1:
        raise IndexOutOfRange("n and m must be positive")
    s = n + m
    return s * (s + 1), (s + 1) ** 2 - 1
