"""Lattice polytopes, affine lattice maps and Cayley sums.

A :class:`LatticePolytope` is the convex hull of finitely many integer points.
Everything is computed exactly: the affine hull is described by a saturated
lattice basis in Hermite form, and facets come from an integer double
description run in hull coordinates. Points are tuples of ints and every list
of points is sorted lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import CayleyKitError, DimensionMismatchError

Point = tuple[int, ...]


@dataclass(frozen=True)
class AffineLatticeMap:
    """The map ``x -> matrix @ x + translation`` from ``Z^n`` to ``Z^r``."""

    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]
    source_dim: int = field(default=-1)

    def __post_init__(self):
        matrix = tuple(tuple(int(a) for a in row) for row in self.matrix)
        translation = tuple(int(a) for a in self.translation)
        source_dim = self.source_dim
        if source_dim < 0:
            if not matrix:
                raise ValueError("source_dim is required for a map with no rows")
            source_dim = len(matrix[0])
        if any(len(row) != source_dim for row in matrix):
            raise DimensionMismatchError("ragged matrix")
        if len(translation) != len(matrix):
            raise DimensionMismatchError(
                f"translation has length {len(translation)}, matrix has {len(matrix)} rows")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "translation", translation)
        object.__setattr__(self, "source_dim", source_dim)

    @classmethod
    def linear(cls, matrix, source_dim: int = -1) -> "AffineLatticeMap":
        return cls(matrix, (0,) * len(matrix), source_dim)

    @classmethod
    def identity(cls, n: int) -> "AffineLatticeMap":
        return cls(linalg.identity(n), (0,) * n, n)

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[int]) -> Point:
        if len(x) != self.source_dim:
            raise DimensionMismatchError(
                f"point of length {len(x)} for a map from Z^{self.source_dim}")
        return tuple(sum(a * b for a, b in zip(row, x)) + t
                     for row, t in zip(self.matrix, self.translation))

    def is_lattice_projection(self) -> bool:
        """True iff the linear part maps ``Z^n`` onto ``Z^r``."""
        if self.target_dim == 0:
            return True
        factors = linalg.invariant_factors(self.matrix)
        return len(factors) == self.target_dim and all(d == 1 for d in factors)


class _AffineHull:
    """Saturated lattice coordinates on the affine hull of a point set.

    ``x = base + y @ basis`` for a unique integer ``y`` whenever ``x`` is an
    integer point of the affine hull. ``basis`` is in row Hermite form.
    """

    def __init__(self, points: Sequence[Point], ambient_dim: int):
        self.base = points[0]
        self.ambient_dim = ambient_dim
        diffs = [[a - b for a, b in zip(p, self.base)] for p in points[1:]]
        diffs = [d for d in diffs if any(d)]
        if not diffs:
            self.basis = []
        elif linalg.rank(diffs) == ambient_dim:
            self.basis = linalg.identity(ambient_dim)
        else:
            _, D, V = linalg.smith_normal_form(diffs)
            k = sum(1 for i in range(min(len(D), ambient_dim)) if D[i][i])
            saturated = linalg.integer_inverse(V)[:k]
            self.basis, _ = linalg.hermite_normal_form(saturated)
        self.dim = len(self.basis)
        self.pivots = [next(j for j, a in enumerate(row) if a) for row in self.basis]

    def to_hull(self, x: Sequence[int]) -> Optional[Point]:
        """Hull coordinates of ``x``, or ``None`` if ``x`` is off the hull."""
        d = [a - b for a, b in zip(x, self.base)]
        y = []
        for row, c in zip(self.basis, self.pivots):
            q, rem = divmod(d[c], row[c])
            if rem:
                return None
            y.append(q)
            if q:
                d = [a - q * b for a, b in zip(d, row)]
        if any(d):
            return None
        return tuple(y)

    def from_hull(self, y: Sequence[int]) -> Point:
        x = list(self.base)
        for q, row in zip(y, self.basis):
            if q:
                x = [a + q * b for a, b in zip(x, row)]
        return tuple(x)


def _double_description(points: Sequence[Point], k: int) -> list[tuple[Point, int]]:
    """Facets ``<h, y> <= b`` of a full-dimensional point set in ``Z^k``.

    The facets are the extreme rays of the cone ``{(h, b) : <h, p> <= b}``;
    rays are found with Motzkin's double description method and the
    combinatorial adjacency test. All arithmetic is integer.
    """
    rows = [tuple(-c for c in p) + (1,) for p in points]

    # Seed with k+1 affinely independent points: a simplicial cone.
    chosen: list[int] = []
    for i in range(len(points)):
        trial = chosen + [i]
        if linalg.rank([rows[j] for j in trial]) == len(trial):
            chosen = trial
            if len(chosen) == k + 1:
                break
    inverse = linalg.invert_rational([rows[j] for j in chosen])
    rays: list[tuple[tuple[int, ...], frozenset]] = []
    for col in range(k + 1):
        column = [inverse[i][col] for i in range(k + 1)]
        lcm = 1
        for x in column:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        ray = linalg.primitive([int(x * lcm) for x in column])
        zeros = frozenset(chosen[i] for i in range(k + 1) if i != col)
        rays.append((ray, zeros))

    seeded = set(chosen)
    for m, a in enumerate(rows):
        if m in seeded:
            continue
        values = [sum(x * y for x, y in zip(a, ray)) for ray, _ in rays]
        plus = [i for i, s in enumerate(values) if s > 0]
        minus = [i for i, s in enumerate(values) if s < 0]
        if not minus:
            rays = [(ray, zeros | {m}) if values[i] == 0 else (ray, zeros)
                    for i, (ray, zeros) in enumerate(rays)]
            continue
        new_rays = []
        for p in plus:
            for q in minus:
                common = rays[p][1] & rays[q][1]
                if len(common) < k - 1:
                    continue
                if any(t != p and t != q and common <= rays[t][1]
                       for t in range(len(rays))):
                    continue
                sp, sq = values[p], values[q]
                ray = linalg.primitive([sp * y - sq * x
                                        for x, y in zip(rays[p][0], rays[q][0])])
                new_rays.append((ray, common | {m}))
        kept = [(ray, zeros | {m}) if values[i] == 0 else (ray, zeros)
                for i, (ray, zeros) in enumerate(rays) if values[i] >= 0]
        rays = kept + new_rays
    return sorted((tuple(ray[:k]), ray[k]) for ray, _ in rays)


class LatticePolytope:
    """Convex hull of a finite, nonempty set of integer points.

    Generators are deduplicated and sorted; vertices, facets and the affine
    hull are derived once and cached.
    """

    def __init__(self, points: Iterable[Sequence[int]], ambient_dim: Optional[int] = None):
        pts = sorted({tuple(int(c) for c in p) for p in points})
        if not pts:
            raise CayleyKitError("a polytope needs at least one point")
        if ambient_dim is None:
            ambient_dim = len(pts[0])
        if any(len(p) != ambient_dim for p in pts):
            raise DimensionMismatchError(
                f"all points must have length {ambient_dim}")
        self.ambient_dim = ambient_dim
        self.generators: tuple[Point, ...] = tuple(pts)
        self._hull = _AffineHull(pts, ambient_dim)
        self._hull_points = [self._hull.to_hull(p) for p in pts]

    def __repr__(self):
        return f"LatticePolytope({[list(v) for v in self.vertices]})"

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return (self.ambient_dim, self.vertices) == (other.ambient_dim, other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    @property
    def dim(self) -> int:
        return self._hull.dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def facets(self) -> tuple[tuple[Point, int], ...]:
        """Facet inequalities ``<h, y> <= b`` in affine-hull coordinates.

        For a full-dimensional polytope hull coordinates are the ambient ones.
        """
        if self.dim == 0:
            return ()
        return tuple(_double_description(self._hull_points, self.dim))

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        if self.dim == 0:
            return self.generators
        out = []
        for p, y in zip(self.generators, self._hull_points):
            tight = [h for h, b in self.facets if _dot(h, y) == b]
            if len(tight) >= self.dim and linalg.rank(tight) == self.dim:
                out.append(p)
        return tuple(out)

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionMismatchError(
                f"point of length {len(x)} in ambient dimension {self.ambient_dim}")
        y = self._hull.to_hull(x)
        if y is None:
            return False
        return all(_dot(h, y) <= b for h, b in self.facets)

    def lattice_points(self) -> list[Point]:
        """All integer points, by a bounding-box scan in hull coordinates."""
        if self.dim == 0:
            return list(self.generators)
        hull_vertices = [self._hull.to_hull(v) for v in self.vertices]
        ranges = [range(min(c), max(c) + 1) for c in zip(*hull_vertices)]
        found = [self._hull.from_hull(y) for y in itertools.product(*ranges)
                 if all(_dot(h, y) <= b for h, b in self.facets)]
        return sorted(found)

    def dilate(self, k: int) -> "LatticePolytope":
        if k < 0:
            raise ValueError("dilation factor must be nonnegative")
        return LatticePolytope([tuple(k * c for c in v) for v in self.vertices],
                               self.ambient_dim)

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([tuple(a + b for a, b in zip(v, t)) for v in self.vertices],
                               self.ambient_dim)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def dimension(P: LatticePolytope) -> int:
    return P.dim


def vertices(P: LatticePolytope) -> list[Point]:
    return list(P.vertices)


def lattice_points(P: LatticePolytope) -> list[Point]:
    return P.lattice_points()


def contains(P: LatticePolytope, x: Sequence[int]) -> bool:
    return P.contains(x)


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    return P.dilate(k)


def simplex(n: int) -> LatticePolytope:
    """The standard unimodular simplex ``conv{0, e_1, ..., e_n}``."""
    return LatticePolytope([(0,) * n] + [tuple(linalg.identity(n)[i]) for i in range(n)], n)


def cayley_sum(polytopes: Sequence[LatticePolytope]) -> LatticePolytope:
    """``P_0 * ... * P_r``: place ``P_i`` at height ``e_i`` (``e_0 = 0``)."""
    if not polytopes:
        raise CayleyKitError("cayley_sum needs at least one polytope")
    s = polytopes[0].ambient_dim
    if any(P.ambient_dim != s for P in polytopes):
        raise DimensionMismatchError("summands must share an ambient dimension")
    r = len(polytopes) - 1
    points = []
    for i, P in enumerate(polytopes):
        lift = tuple(int(j == i - 1) for j in range(r))
        points.extend(v + lift for v in P.vertices)
    return LatticePolytope(points, s + r)


def is_unimodular_simplex(P: LatticePolytope) -> bool:
    if not P.is_full_dimensional or len(P.vertices) != P.dim + 1:
        return False
    v0 = P.vertices[0]
    edges = [[a - b for a, b in zip(v, v0)] for v in P.vertices[1:]]
    return abs(linalg.determinant(edges)) == 1


def apply_map(f: AffineLatticeMap, P: LatticePolytope) -> LatticePolytope:
    if f.source_dim != P.ambient_dim:
        raise DimensionMismatchError(
            f"map from Z^{f.source_dim} applied to a polytope in Z^{P.ambient_dim}")
    return LatticePolytope([f(v) for v in P.vertices], f.target_dim)


def restrict_to_affine_hull(P: LatticePolytope) -> tuple[LatticePolytope, AffineLatticeMap]:
    """Full-dimensional copy of ``P`` in the lattice of its affine hull.

    Returns ``(Q, embed)`` with ``embed`` mapping ``Q`` (and its lattice
    points) bijectively back onto ``P``.
    """
    hull = P._hull
    Q = LatticePolytope([hull.to_hull(v) for v in P.vertices], hull.dim)
    embed = AffineLatticeMap(linalg.transpose(hull.basis, P.ambient_dim) if hull.basis
                             else [[] for _ in range(P.ambient_dim)],
                             hull.base, hull.dim)
    return Q, embed
