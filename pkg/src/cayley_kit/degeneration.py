"""Plane witnesses, their torus degeneration, and the extracted projection.

A plane witness is a basis ``a_1, ..., a_r`` of a linear space ``V`` of
``Q^N``; the plane it stands for is ``1_N + V`` in the affine chart of
``P^N`` where the coordinate of ``u_0`` is nonzero. Coordinate ``j``
(1-based) belongs to the lattice point ``u_j``.

The pipeline turning a witness into a Cayley certificate is

1. :func:`normalize_star`: a basis in reduced echelon shape with strictly
   decreasing leading indices ``j_1 > ... > j_r``;
2. :func:`degenerate`: ``r`` pivot steps, pivoting on ``a_r``, then
   ``a_{r-1}``, ... Each step replaces the pivot by the indicator of its
   support and zeroes every other vector on that support, which is the limit
   of the torus translates as the translation parameter goes to infinity;
3. :func:`labels` and :func:`mu`: read ``i_j`` off the binary vectors and build
   ``e_j -> e_{i_j}``;
4. :func:`solve_pi_prime`: the unique ``pi'`` on ``Z^n`` with
   ``pi' o pi = mu`` where ``pi`` sends ``e_j`` to ``u_j``.

Only zero patterns matter in step 2, so exact rationals compute the limits
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg
from .cayley import CayleyStructure, canonical_form, verify_cayley_structure
from .errors import (CayleyKitError, DegenerationError, DependentWitnessError,
                     InvalidCertificateError, NotFullDimensionalError,
                     OverlappingSupportsError, PiPrimeError, StarConditionError)
from .polytope import AffineLatticeMap, LatticePolytope, Point

RationalVector = tuple[Fraction, ...]
BinaryVector = tuple[int, ...]


@dataclass(frozen=True)
class PlaneWitness:
    N: int
    vectors: tuple[RationalVector, ...]

    def __post_init__(self):
        vectors = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        if any(len(v) != self.N for v in vectors):
            raise CayleyKitError(f"witness vectors must have length N={self.N}")
        object.__setattr__(self, "vectors", vectors)

    @property
    def r(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {"N": self.N,
                "vectors": [[_format_rational(x) for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, doc: dict) -> "PlaneWitness":
        try:
            N = doc["N"]
            raw = doc["vectors"]
        except (KeyError, TypeError) as exc:
            raise CayleyKitError(f"malformed witness: missing {exc}") from exc
        if not isinstance(N, int) or isinstance(N, bool) or N < 1:
            raise CayleyKitError("malformed witness: N must be a positive integer")
        if not isinstance(raw, list) or not raw:
            raise CayleyKitError("malformed witness: vectors must be a nonempty array")
        try:
            vectors = [[_parse_rational(x) for x in v] for v in raw]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise CayleyKitError(f"malformed witness entry: {exc}") from exc
        return cls(N, tuple(map(tuple, vectors)))


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise TypeError(f"expected an integer or a 'p/q' string, got {x!r}")
    return Fraction(x)


def _format_rational(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class IndexedPointMap:
    """Lattice points of ``P - u_0`` as ``0, u_1, ..., u_N``.

    ``matrix`` is the ``n x N`` matrix of ``pi``, column ``j`` being ``u_j``.
    """

    base: Point
    points: tuple[Point, ...]

    @property
    def N(self) -> int:
        return len(self.points)

    @property
    def matrix(self) -> list[list[int]]:
        n = len(self.base)
        return [[u[i] for u in self.points] for i in range(n)]


def _leading_index(v: Sequence) -> int:
    return next((j for j, x in enumerate(v) if x != 0), -1)


def normalize_star(W: PlaneWitness) -> PlaneWitness:
    """Equivalent basis with pivot columns cleared and ``j_1 > ... > j_r``.

    Rows are combined but never rescaled, so an input already in this shape
    comes back unchanged apart from row order.
    """
    rows = [list(v) for v in W.vectors]
    r = len(rows)
    pivot_row = 0
    for c in range(W.N):
        if pivot_row == r:
            break
        p = next((i for i in range(pivot_row, r) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[pivot_row], rows[p] = rows[p], rows[pivot_row]
        pivot = rows[pivot_row]
        for i in range(r):
            if i != pivot_row and rows[i][c] != 0:
                f = rows[i][c] / pivot[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pivot)]
        pivot_row += 1
    if pivot_row < r:
        raise DependentWitnessError()
    return PlaneWitness(W.N, tuple(tuple(v) for v in reversed(rows)))


def check_star(vectors: Sequence[Sequence]) -> None:
    """Raise :class:`StarConditionError` unless ``vectors`` are star-normalized.

    Leading indices must strictly decrease and every vector must vanish at
    the leading index of every other one.
    """
    leads = [_leading_index(v) for v in vectors]
    if any(j < 0 for j in leads):
        raise StarConditionError("zero vector")
    if any(a <= b for a, b in zip(leads, leads[1:])):
        raise StarConditionError("leading indices not strictly decreasing")
    for i, v in enumerate(vectors):
        for k, j in enumerate(leads):
            if k != i and v[j] != 0:
                raise StarConditionError("pivot columns not cleared")


def degeneration_steps(W: PlaneWitness) -> list[tuple[tuple[Fraction, ...], ...]]:
    """The families ``a^(0), a^(1), ..., a^(r)`` produced by the pivot steps."""
    check_star(W.vectors)
    family = [list(v) for v in W.vectors]
    history = [tuple(map(tuple, family))]
    for pivot in reversed(range(W.r)):
        support = [x != 0 for x in family[pivot]]
        for i in range(W.r):
            if i == pivot:
                family[i] = [Fraction(int(s)) for s in support]
            else:
                family[i] = [Fraction(0) if s else x for x, s in zip(family[i], support)]
        history.append(tuple(map(tuple, family)))
    return history


def degenerate(W: PlaneWitness) -> tuple[BinaryVector, ...]:
    """Binary vectors with disjoint supports spanning the limit plane."""
    final = degeneration_steps(W)[-1]
    return tuple(tuple(int(x) for x in v) for v in final)


def labels(binary: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """``i_j`` for ``j = 1..N``: the 1-based vector with a 1 at ``j``, else 0."""
    if not binary:
        return ()
    out = []
    for j, column in enumerate(zip(*binary)):
        hits = [i + 1 for i, x in enumerate(column) if x]
        if len(hits) > 1:
            raise OverlappingSupportsError(j + 1)
        out.append(hits[0] if hits else 0)
    return tuple(out)


def mu(label_assignment: Sequence[int], r: int) -> AffineLatticeMap:
    """The map ``Z^N -> Z^r``, ``e_j -> e_{i_j}`` with ``e_0 = 0``."""
    N = len(label_assignment)
    matrix = [[int(label_assignment[j] == i + 1) for j in range(N)] for i in range(r)]
    return AffineLatticeMap(matrix, (0,) * r, N)


def point_index_map(P: LatticePolytope) -> IndexedPointMap:
    """Translate ``P`` so its lexicographically smallest lattice point is 0.

    That point minimizes a lexicographic order, so it is a vertex.
    """
    if not P.is_full_dimensional:
        raise NotFullDimensionalError(P.dim, P.ambient_dim)
    pts = P.lattice_points()
    base = pts[0]
    rest = tuple(tuple(a - b for a, b in zip(u, base)) for u in pts[1:])
    return IndexedPointMap(base, rest)


def solve_pi_prime(pm: IndexedPointMap, mu_map: AffineLatticeMap) -> AffineLatticeMap:
    """The linear ``pi': Z^n -> Z^r`` with ``pi' o pi = mu``.

    For each basis vector ``e_k`` take the least ``m >= 1`` with ``m e_k`` in
    the image of ``pi``, a preimage ``u'``, and set ``pi'(e_k) = mu(u') / m``.
    Raises :class:`PiPrimeError` when the division is inexact, when the
    resulting map fails ``pi' o pi = mu``, or when it is not surjective.
    """
    n = len(pm.base)
    r = mu_map.target_dim
    if mu_map.source_dim != pm.N:
        raise CayleyKitError(f"mu has source Z^{mu_map.source_dim}, expected Z^{pm.N}")
    Pi = pm.matrix
    U, D, V = linalg.smith_normal_form(Pi)
    diag = [D[i][i] for i in range(min(n, pm.N))]
    if len(diag) < n or any(d == 0 for d in diag):
        raise PiPrimeError("rank failure")
    columns = []
    for k in range(n):
        # m e_k lies in the image iff d_i divides m * U[i][k] for every i.
        m = 1
        for i, d in enumerate(diag):
            g = gcd(d, U[i][k])
            m = m * (d // g) // gcd(m, d // g)
        y = [m * U[i][k] // diag[i] for i in range(n)] + [0] * (pm.N - n)
        preimage = linalg.matvec(V, y)
        value = mu_map(preimage)
        if any(x % m for x in value):
            raise PiPrimeError("divisibility failed")
        columns.append([x // m for x in value])
    matrix = linalg.transpose(columns, r) if columns else [[] for _ in range(r)]
    pi_prime = AffineLatticeMap(matrix, (0,) * r, n)
    for j, u in enumerate(pm.points):
        e_j = [int(i == j) for i in range(pm.N)]
        if pi_prime(u) != mu_map(e_j):
            raise PiPrimeError("verification failed")
    if not pi_prime.is_lattice_projection():
        raise PiPrimeError("surjectivity failed")
    return pi_prime


def recover_cayley(P: LatticePolytope, W: PlaneWitness) -> CayleyStructure:
    """Run the whole pipeline and return a verified certificate."""
    pm = point_index_map(P)
    if W.N != pm.N:
        raise DegenerationError("input", f"witness has N={W.N}, polytope has N={pm.N}")
    normalized = normalize_star(W)
    binary = degenerate(normalized)
    assignment = labels(binary)
    pi_prime = solve_pi_prime(pm, mu(assignment, W.r))
    translation = tuple(-x for x in pi_prime(pm.base))
    projection = AffineLatticeMap(pi_prime.matrix, translation, P.ambient_dim)
    S = CayleyStructure(W.r, projection, (0,) + assignment)
    check = verify_cayley_structure(P, S)
    if not check:
        raise DegenerationError("verify", check.reason)
    return S


def witness_from_cayley(P: LatticePolytope, S: CayleyStructure) -> PlaneWitness:
    """Binary witness of the plane a structure gives: ``b_ij = [label(u_j) = i]``.

    The structure is first brought to canonical form so that ``u_0`` carries
    label 0, which puts the plane through ``1_N``.
    """
    check = verify_cayley_structure(P, S)
    if not check:
        raise InvalidCertificateError(check.reason)
    S = canonical_form(P, S)
    rest = S.labels[1:]
    vectors = tuple(tuple(Fraction(int(l == i)) for l in rest) for i in range(1, S.r + 1))
    return PlaneWitness(len(rest), vectors)


def scramble(W: PlaneWitness, g: Sequence[Sequence], s: Sequence) -> PlaneWitness:
    """Recombine the basis by ``g`` and move the plane by the torus element ``q^-1``.

    ``q = 1_N + sum_i s_i a_i`` is a point of the plane; the translate
    ``q^-1 (1_N + V)`` is ``1_N + q^-1 V``.
    """
    r = W.r
    if len(g) != r or any(len(row) != r for row in g) or len(s) != r:
        raise CayleyKitError("g must be r x r and s of length r")
    if linalg.rank(g) < r:
        raise CayleyKitError("g is singular")
    s = [Fraction(x) for x in s]
    q = [1 + sum(si * a[j] for si, a in zip(s, W.vectors)) for j in range(W.N)]
    if any(x == 0 for x in q):
        raise CayleyKitError("torus element has a zero coordinate")
    mixed = [[sum(Fraction(gk) * a[j] for gk, a in zip(row, W.vectors)) for j in range(W.N)]
             for row in g]
    return PlaneWitness(W.N, tuple(tuple(x / qj for x, qj in zip(v, q)) for v in mixed))
