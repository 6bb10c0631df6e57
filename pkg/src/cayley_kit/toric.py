"""Combinatorial invariants of the polarized toric variety of ``P``.

Degree-``k`` sections correspond to lattice points of ``kP``, so the counts
here are read straight off dilates.
"""

from __future__ import annotations

from math import comb

from . import linalg
from .cayley import find_cayley_structure
from .errors import NotFullDimensionalError
from .polytope import LatticePolytope


def ehrhart_count(P: LatticePolytope, k: int) -> int:
    """``#(kP ∩ Z^n)`` by explicit dilation and scan."""
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    return len(P.dilate(k).lattice_points())


def finite_difference(values, order: int, at: int = 0) -> int:
    """Forward difference of the given ``order`` of a sequence at index ``at``."""
    return sum((-1) ** (order - i) * comb(order, i) * values[at + i]
               for i in range(order + 1))


def normalized_volume(P: LatticePolytope) -> int:
    """``n! vol(P)``: the ``n``-th finite difference of the Ehrhart counts at 0."""
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dim, P.ambient_dim)
    n = P.ambient_dim
    counts = [ehrhart_count(P, k) for k in range(n + 1)]
    return finite_difference(counts, n)


def spanned_lattice_index(P: LatticePolytope):
    """Index in ``Z^n`` of the lattice spanned by ``u - u_0``, ``u ∈ P ∩ Z^n``.

    Returns :data:`cayley_kit.linalg.INFINITE` for lower-dimensional ``P``.
    """
    points = P.lattice_points()
    base = points[0]
    diffs = [[a - b for a, b in zip(u, base)] for u in points[1:]]
    return linalg.lattice_index(diffs, P.ambient_dim)


def seshadri_is_one(P: LatticePolytope) -> bool:
    """Whether the Seshadri constant at a very general point equals 1.

    This holds exactly when ``P`` has lattice width one, i.e. when ``P`` is a
    Cayley polytope of length 2; decided through the Cayley search, not the
    width search, so the two stay independent.
    """
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dim, P.ambient_dim)
    return find_cayley_structure(P, 1) is not None
