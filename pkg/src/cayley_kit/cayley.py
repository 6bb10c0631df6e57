"""Cayley structures: lattice projections of ``P`` onto a unimodular simplex.

A structure of length ``r+1`` is an affine lattice map ``u -> A @ u + t`` to
``Z^r`` sending every lattice point of ``P`` to one of ``0, e_1, ..., e_r``,
with every one of them attained. Its label map partitions ``P ∩ Z^n`` into
``r+1`` classes, and the partition determines the structure up to a
relabeling of the simplex vertices.

Canonical form. The class containing the base point ``u_0`` (the
lexicographically smallest lattice point) gets label 0; the remaining classes
are numbered ``1..r`` by decreasing index of their first lattice point in
sorted order. This is the same convention the degeneration pipeline produces,
so certificates coming from either side compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import CayleyKitError, InvalidCertificateError, NotFullDimensionalError
from .polytope import AffineLatticeMap, LatticePolytope, Point, cayley_sum
from .width import width_one_directions


@dataclass(frozen=True)
class CayleyStructure:
    """Certificate that ``P`` is a Cayley polytope of length ``r + 1``.

    ``labels[k]`` is the simplex vertex hit by the ``k``-th lattice point of
    ``P`` in lexicographic order.
    """

    r: int
    projection: AffineLatticeMap
    labels: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "matrix": [list(row) for row in self.projection.matrix],
            "translation": list(self.projection.translation),
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, doc: dict, ambient_dim: int) -> "CayleyStructure":
        try:
            r = doc["r"]
            matrix = doc["matrix"]
            translation = doc["translation"]
            labels = doc["labels"]
        except (KeyError, TypeError) as exc:
            raise CayleyKitError(f"malformed certificate: missing {exc}") from exc
        values = [r, *labels, *translation, *(x for row in matrix for x in row)]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
            raise CayleyKitError("malformed certificate: entries must be integers")
        if len(matrix) != r or any(len(row) != ambient_dim for row in matrix):
            raise CayleyKitError(
                f"malformed certificate: matrix must be {r} x {ambient_dim}")
        if len(translation) != r:
            raise CayleyKitError("malformed certificate: translation length must be r")
        return cls(r, AffineLatticeMap(matrix, translation, ambient_dim), tuple(labels))


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


def _simplex_vertex(r: int, label: int) -> Point:
    return tuple(int(i == label - 1) for i in range(r))


def verify_cayley_structure(P: LatticePolytope, S: CayleyStructure) -> Verification:
    """Re-check every structure invariant from scratch.

    Checks run in a fixed order and the first failure is reported.
    """
    f = S.projection
    if f.source_dim != P.ambient_dim or f.target_dim != S.r:
        return Verification(False, "dimension mismatch")
    if S.r < 1:
        return Verification(False, "length must be at least 2")
    points = P.lattice_points()
    if len(S.labels) != len(points):
        return Verification(False, "label count mismatch")
    simplex_vertices = {_simplex_vertex(S.r, i): i for i in range(S.r + 1)}
    for u, label in zip(points, S.labels):
        image = f(u)
        if image not in simplex_vertices:
            return Verification(False, "image not in simplex")
        if simplex_vertices[image] != label:
            return Verification(False, "label mismatch")
    attained = {simplex_vertices[f(v)] for v in P.vertices}
    if len(attained) != S.r + 1:
        return Verification(False, "simplex vertex not attained")
    for row in f.matrix:
        values = [sum(a * b for a, b in zip(row, v)) for v in P.vertices]
        if max(values) - min(values) != 1:
            return Verification(False, "row width not one")
    if not f.is_lattice_projection():
        return Verification(False, "projection not surjective")
    return Verification(True)


def _require(P: LatticePolytope) -> None:
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dim, P.ambient_dim)


def _structure_from_classes(P: LatticePolytope, points: Sequence[Point],
                            classes: Sequence[Sequence[int]]) -> Optional[CayleyStructure]:
    """The structure whose label-``i`` fiber is ``classes[i]`` (point indices).

    Returns ``None`` when no affine lattice map realizes that labeling.
    """
    r = len(classes) - 1
    n = P.ambient_dim
    labels = [0] * len(points)
    for i, cls in enumerate(classes):
        for k in cls:
            labels[k] = i
    base = points[0]
    diffs: list[Point] = []
    chosen: list[int] = []
    for k in range(1, len(points)):
        d = tuple(a - b for a, b in zip(points[k], base))
        if linalg.rank(diffs + [d]) == len(diffs) + 1:
            diffs.append(d)
            chosen.append(k)
            if len(diffs) == n:
                break
    D_inv = linalg.invert_rational(diffs)
    base_image = _simplex_vertex(r, labels[0])
    matrix = []
    for i in range(r):
        rhs = [int(labels[k] == i + 1) - base_image[i] for k in chosen]
        row = [sum(a * b for a, b in zip(D_inv_row, rhs)) for D_inv_row in D_inv]
        if any(x.denominator != 1 for x in row):
            return None
        matrix.append([int(x) for x in row])
    translation = [b - sum(a * c for a, c in zip(row, base))
                   for row, b in zip(matrix, base_image)]
    S = CayleyStructure(r, AffineLatticeMap(matrix, translation, n), tuple(labels))
    return S if verify_cayley_structure(P, S) else None


def _canonical_classes(labels: Sequence[int], r: int) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in range(r + 1)]
    for k, label in enumerate(labels):
        classes[label].append(k)
    base_class = next(c for c in classes if 0 in c)
    others = sorted((c for c in classes if c is not base_class), key=lambda c: -c[0])
    return [base_class] + others


def canonical_form(P: LatticePolytope, S: CayleyStructure) -> CayleyStructure:
    """Relabel ``S`` into canonical form (see the module docstring)."""
    _require(P)
    check = verify_cayley_structure(P, S)
    if not check:
        raise InvalidCertificateError(check.reason)
    out = _structure_from_classes(P, P.lattice_points(), _canonical_classes(S.labels, S.r))
    assert out is not None
    return out


def _sort_key(S: CayleyStructure):
    return ([x for row in S.projection.matrix for x in row], list(S.projection.translation))


def find_cayley_structure(P: LatticePolytope, r: int) -> Optional[CayleyStructure]:
    """Lexicographically smallest canonical structure of length ``r + 1``.

    Each row of a structure normalized to the standard simplex is a width-one
    functional taking values 0 and 1 on ``P``; its direction is a width-one
    direction up to sign. The search therefore runs over both orientations of
    every width-one direction, keeps sets whose 1-sets are pairwise disjoint
    on vertices and leave some vertex at 0, and canonicalizes each hit. The
    search is exhaustive; ``None`` means no such structure exists.
    """
    _require(P)
    if not 1 <= r <= P.ambient_dim:
        raise CayleyKitError(f"length parameter r={r} outside 1..{P.ambient_dim}")

    functionals = []
    for v, offset in width_one_directions(P):
        functionals.append((v, -offset))
        functionals.append((tuple(-a for a in v), offset + 1))
    verts = P.vertices
    ones = [frozenset(k for k, u in enumerate(verts)
                      if sum(a * b for a, b in zip(w, u)) + c == 1)
            for w, c in functionals]
    all_vertices = frozenset(range(len(verts)))
    points = P.lattice_points()

    seen: set = set()
    best: Optional[CayleyStructure] = None

    def labels_for(chosen):
        labels = []
        for u in points:
            vals = [sum(a * b for a, b in zip(functionals[i][0], u)) + functionals[i][1]
                    for i in chosen]
            label = next((j + 1 for j, x in enumerate(vals) if x == 1), 0)
            labels.append(label)
        return labels

    def search(start, chosen, used):
        nonlocal best
        if len(chosen) == r:
            if used == all_vertices:
                return
            classes = _canonical_classes(labels_for(chosen), r)
            key = tuple(map(tuple, classes))
            if key in seen:
                return
            seen.add(key)
            S = _structure_from_classes(P, points, classes)
            if S is not None and (best is None or _sort_key(S) < _sort_key(best)):
                best = S
            return
        for i in range(start, len(functionals) - (r - len(chosen)) + 1):
            if ones[i] & used:
                continue
            search(i + 1, chosen + [i], used | ones[i])

    search(0, [], frozenset())
    return best


def max_cayley_length(P: LatticePolytope) -> int:
    """Largest ``r + 1`` admitting a structure; 1 when there is none."""
    _require(P)
    length = 1
    for r in range(1, P.ambient_dim + 1):
        if find_cayley_structure(P, r) is None:
            break
        length = r + 1
    return length


def max_cayley_structure(P: LatticePolytope) -> tuple[int, Optional[CayleyStructure]]:
    _require(P)
    length, best = 1, None
    for r in range(1, P.ambient_dim + 1):
        S = find_cayley_structure(P, r)
        if S is None:
            break
        length, best = r + 1, S
    return length, best


def _complete_to_unimodular(A: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Unimodular ``n x n`` matrix whose last ``r`` rows are the surjective ``A``."""
    r = len(A)
    H, U = linalg.hermite_normal_form(linalg.transpose(A, n))
    # A @ U^T = H^T = [B | 0] with B unimodular, so A = [B | 0] @ W_inv.
    W_inv = linalg.transpose(linalg.integer_inverse(U))
    complement, _ = linalg.hermite_normal_form(W_inv[r:])
    return complement + [list(row) for row in A]


def extract_summands(P: LatticePolytope, S: CayleyStructure
                     ) -> tuple[list[LatticePolytope], AffineLatticeMap]:
    """Split ``P`` as ``P_0 * ... * P_r`` in new lattice coordinates.

    Returns the summands in ``Z^(n-r)`` and the map ``iso`` with
    ``apply_map(iso, cayley_sum(summands)) == P``.
    """
    check = verify_cayley_structure(P, S)
    if not check:
        raise InvalidCertificateError(check.reason)
    n, r = P.ambient_dim, S.r
    M = _complete_to_unimodular(S.projection.matrix, n)
    shift = [0] * (n - r) + list(S.projection.translation)
    fibers: list[list[Point]] = [[] for _ in range(r + 1)]
    for u, label in zip(P.lattice_points(), S.labels):
        z = linalg.matvec(M, u)
        fibers[label].append(tuple(z[: n - r]))
    summands = [LatticePolytope(f, n - r) for f in fibers]
    M_inv = linalg.integer_inverse(M)
    iso = AffineLatticeMap(M_inv, [-x for x in linalg.matvec(M_inv, shift)], n)
    return summands, iso


def defining_structure(polytopes: Sequence[LatticePolytope]
                       ) -> tuple[LatticePolytope, CayleyStructure]:
    """``P_0 * ... * P_r`` together with its projection onto the last ``r`` coordinates."""
    P = cayley_sum(polytopes)
    r = len(polytopes) - 1
    s = polytopes[0].ambient_dim
    matrix = [[0] * s + [int(i == j) for j in range(r)] for i in range(r)]
    f = AffineLatticeMap(matrix, (0,) * r, s + r)
    labels = []
    for u in P.lattice_points():
        tail = u[s:]
        labels.append(tail.index(1) + 1 if any(tail) else 0)
    return P, CayleyStructure(r, f, tuple(labels))
