"""Exact lattice width and width-one directions.

Search space. Fix affinely independent vertices ``v_0, ..., v_n`` and let
``D`` be the matrix with rows ``d_k = v_k - v_0``. For any integer direction
``v``, ``<d_k, v>`` is an integer with ``|<d_k, v>| <= width(P, v)``, because
both ``<v_k, v>`` and ``<v_0, v>`` lie in the range of ``v`` over ``P``. So
every direction of width at most ``w`` has ``c = D @ v`` in the box
``[-w, w]^n``, and ``v = D^-1 @ c``. Enumerating that box with ``w`` set to a
known upper bound is therefore exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import CayleyKitError, NotFullDimensionalError
from .polytope import LatticePolytope, Point


@dataclass(frozen=True)
class WidthCertificate:
    direction: Point
    value: int
    bound_used: int
    difference_matrix: tuple[Point, ...]

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "direction": list(self.direction),
            "bound_used": self.bound_used,
            "difference_matrix": [list(row) for row in self.difference_matrix],
        }


def width_along(P: LatticePolytope, v: Sequence[int]) -> int:
    if len(v) != P.ambient_dim:
        raise CayleyKitError("direction length does not match ambient dimension")
    if not any(v):
        raise CayleyKitError("direction must be nonzero")
    values = [sum(a * b for a, b in zip(u, v)) for u in P.vertices]
    return max(values) - min(values)


def _require_full_dimensional(P: LatticePolytope) -> None:
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dim, P.ambient_dim)


def difference_matrix(P: LatticePolytope) -> tuple[Point, ...]:
    """Rows ``v_k - v_0`` for the lexicographically first affine basis of vertices."""
    _require_full_dimensional(P)
    v0 = P.vertices[0]
    rows: list[Point] = []
    for v in P.vertices[1:]:
        d = tuple(a - b for a, b in zip(v, v0))
        if linalg.rank(rows + [d]) == len(rows) + 1:
            rows.append(d)
            if len(rows) == P.ambient_dim:
                break
    return tuple(rows)


def _candidates(D_inv: list[list[Fraction]], bound: int):
    """Yield ``(c, v)`` for integral nonzero ``v = D^-1 @ c``, ``||c|| <= bound``."""
    n = len(D_inv)
    for c in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(c):
            continue
        v = [sum(a * x for a, x in zip(row, c)) for row in D_inv]
        if all(x.denominator == 1 for x in v):
            yield c, tuple(int(x) for x in v)


def lattice_width(P: LatticePolytope) -> WidthCertificate:
    """Minimum width over nonzero integer directions, with its certificate.

    The reported direction is primitive with a positive first nonzero entry;
    ties go to the lexicographically smallest such direction.
    """
    _require_full_dimensional(P)
    n = P.ambient_dim
    if n == 0 or len(P.vertices) == 1:
        raise CayleyKitError("lattice width of a single point is undefined")

    axes = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    w0 = min(width_along(P, e) for e in axes)
    best = min((width_along(P, e), e) for e in axes)

    D = difference_matrix(P)
    D_inv = linalg.invert_rational(D)
    for c, v in _candidates(D_inv, w0):
        # Anything with ||c|| above the current optimum is strictly worse.
        if max(abs(x) for x in c) > best[0]:
            continue
        v = linalg.canonical_direction(v)
        best = min(best, (width_along(P, v), v))
    value, direction = best
    return WidthCertificate(direction, value, w0, D)


def width_one_directions(P: LatticePolytope) -> list[tuple[Point, int]]:
    """All canonical directions ``v`` with ``v(P) = [offset, offset + 1]``.

    Returned as ``(v, offset)`` pairs sorted by ``v``.
    """
    _require_full_dimensional(P)
    if P.ambient_dim == 0:
        return []
    D_inv = linalg.invert_rational(difference_matrix(P))
    found = {}
    for _, v in _candidates(D_inv, 1):
        v = linalg.canonical_direction(v)
        if v in found:
            continue
        values = [sum(a * b for a, b in zip(u, v)) for u in P.vertices]
        if max(values) - min(values) == 1:
            found[v] = min(values)
    return sorted(found.items())
