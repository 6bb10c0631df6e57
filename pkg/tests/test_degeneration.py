import random
from fractions import Fraction as F

import pytest

from cayley_kit import linalg
from cayley_kit.cayley import (CayleyStructure, canonical_form, defining_structure,
                               find_cayley_structure, verify_cayley_structure)
from cayley_kit.degeneration import (PlaneWitness, degenerate, degeneration_steps, labels,
                                     mu, normalize_star, point_index_map, recover_cayley,
                                     scramble, solve_pi_prime, witness_from_cayley)
from cayley_kit.errors import (CayleyKitError, DegenerationError, DependentWitnessError,
                               OverlappingSupportsError, PiPrimeError, StarConditionError)
from cayley_kit.polytope import AffineLatticeMap, LatticePolytope

from generators import (random_admissible_s, random_family, random_invertible,
                        random_witness_vectors)


def W(*vectors):
    return PlaneWitness(len(vectors[0]), vectors)


def test_normalize_star_single_vector():
    assert normalize_star(W((2, 0, 1))) == W((2, 0, 1))


def test_normalize_star_orders_by_leading_index():
    out = normalize_star(W((1, 0, 0, 0), (0, 0, 1, 3)))
    assert out.vectors == W((0, 0, 1, 3), (1, 0, 0, 0)).vectors


def test_normalize_star_dependent():
    with pytest.raises(DependentWitnessError) as info:
        normalize_star(W((1, 1), (2, 2)))
    assert str(info.value) == "normalize-star: dependent"


def test_normalize_star_clears_pivot_columns():
    out = normalize_star(W((0, 1, 1), (1, 1, 0)))
    # span{(0,1,1),(1,1,0)} = span{(0,1,1),(1,0,-1)}
    assert out.vectors == W((0, 1, 1), (1, 0, -1)).vectors


def test_degenerate_single_vector():
    assert degenerate(W((0, 2, -5))) == ((0, 1, 1),)


def test_degenerate_two_steps():
    assert degenerate(W((0, 0, 1, 3), (1, 2, 0, 0))) == ((0, 0, 1, 1), (1, 1, 0, 0))


def test_degenerate_fixed_point():
    binary = W((0, 0, 1, 1, 0), (1, 0, 0, 0, 1))
    assert degenerate(binary) == ((0, 0, 1, 1, 0), (1, 0, 0, 0, 1))


def test_degenerate_step_formulas_by_hand():
    # a_1 = (0, 1, 0, 2, 3), a_2 = (1, 0, 0, 4, 0): pivot on a_2 zeroes a_1 at
    # positions 1 and 4, then a_1 becomes its own support indicator.
    steps = degeneration_steps(W((0, 1, 0, 2, 3), (1, 0, 0, 4, 0)))
    assert steps[1] == ((0, 1, 0, 0, 3), (1, 0, 0, 1, 0))
    assert steps[2] == ((0, 1, 0, 0, 1), (1, 0, 0, 1, 0))


def test_degenerate_rejects_star_violations():
    with pytest.raises(StarConditionError):
        degenerate(W((1, 0, 0), (0, 1, 0)))
    with pytest.raises(StarConditionError):
        degenerate(W((0, 1, 1), (1, 1, 0)))


def test_labels_and_mu():
    assert labels([(0, 1, 1)]) == (0, 1, 1)
    assert mu((0, 1, 1), 1).matrix == ((0, 1, 1),)
    assert labels([(0, 0, 1, 1), (1, 1, 0, 0)]) == (2, 2, 1, 1)
    assert labels([(0, 0, 0), (0, 0, 0)]) == (0, 0, 0)
    assert mu((0, 0, 0), 2).matrix == ((0, 0, 0), (0, 0, 0))
    with pytest.raises(OverlappingSupportsError):
        labels([(1, 1), (0, 1)])


def test_point_index_map(SQ, R1):
    pm = point_index_map(SQ)
    assert pm.base == (0, 0) and pm.points == ((0, 1), (1, 0), (1, 1)) and pm.N == 3
    pm = point_index_map(R1)
    assert pm.points == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    pm = point_index_map(LatticePolytope([(0,), (1,)]))
    assert pm.points == ((1,),) and pm.N == 1


def test_point_index_map_translates():
    P = LatticePolytope([(2, 3), (3, 3), (2, 4)])
    pm = point_index_map(P)
    assert pm.base == (2, 3)
    assert pm.points == ((0, 1), (1, 0))


def test_solve_pi_prime_square(SQ):
    pi_prime = solve_pi_prime(point_index_map(SQ), mu((1, 0, 1), 1))
    assert pi_prime.matrix == ((0, 1),)


def test_solve_pi_prime_needs_division(R1):
    pm = point_index_map(R1)
    # The points span an index-2 sublattice, so e_3 needs m = 2.
    assert linalg.lattice_index(list(pm.points)) == 2
    pi_prime = solve_pi_prime(pm, mu((1, 1, 0), 1))
    assert pi_prime.matrix == ((0, 0, 1),)


def test_solve_pi_prime_contradiction(SQ):
    with pytest.raises(PiPrimeError) as info:
        solve_pi_prime(point_index_map(SQ), mu((1, 1, 1), 1))
    assert str(info.value) == "pi-prime verification failed"


def test_solve_pi_prime_divisibility_failure(R1):
    # mu(u_1 + u_2 - u_3) = 1 is odd, but that vector is 2 e_3.
    with pytest.raises(PiPrimeError) as info:
        solve_pi_prime(point_index_map(R1), mu((1, 0, 0), 1))
    assert "divisibility" in str(info.value)


def test_recover_square(SQ):
    expected = find_cayley_structure(SQ, 1)
    assert recover_cayley(SQ, W((1, 0, 1))) == expected
    assert recover_cayley(SQ, W((F(1, 2), 0, F(1, 2)))) == expected
    with pytest.raises(PiPrimeError):
        recover_cayley(SQ, W((1, 1, 1)))


def test_recover_checks_N(SQ):
    with pytest.raises(DegenerationError):
        recover_cayley(SQ, W((1, 0)))


def test_witness_from_cayley(SQ, R1, D2):
    assert witness_from_cayley(SQ, find_cayley_structure(SQ, 1)) == W((1, 0, 1))
    z = CayleyStructure(1, AffineLatticeMap([[0, 0, 1]], [0]), (0, 1, 1, 0))
    assert witness_from_cayley(R1, z) == W((1, 1, 0))
    ident = CayleyStructure(2, AffineLatticeMap.identity(2), (0, 2, 1))
    assert witness_from_cayley(D2, ident) == W((0, 1), (1, 0))


def test_scramble_examples():
    w = W((1, 0, 1))
    assert scramble(w, [[1]], [0]) == w
    assert scramble(w, [[1]], [1]) == W((F(1, 2), 0, F(1, 2)))
    with pytest.raises(CayleyKitError):
        scramble(w, [[1]], [-1])
    with pytest.raises(CayleyKitError):
        scramble(W((1, 0), (0, 1)), [[1, 1], [1, 1]], [0, 0])


def test_witness_json_roundtrip():
    w = W((F(1, 2), 0, F(-3, 4)))
    doc = w.to_json()
    assert doc == {"N": 3, "vectors": [["1/2", 0, "-3/4"]]}
    assert PlaneWitness.from_json(doc) == w
    with pytest.raises(CayleyKitError):
        PlaneWitness.from_json({"N": 2, "vectors": [[0.5, 1]]})


def _partition(binary):
    return sorted(tuple(j for j, x in enumerate(v) if x) for v in binary)


def test_degeneration_postconditions_random():
    rng = random.Random(31)
    for _ in range(80):
        r, N = rng.randint(1, 3), rng.randint(3, 12)
        if r > N:
            continue
        w = normalize_star(PlaneWitness(N, random_witness_vectors(rng, r, N)))
        steps = degeneration_steps(w)
        leads = [next(j for j, x in enumerate(v) if x) for v in w.vectors]
        for k, family in enumerate(steps):
            assert linalg.rank(family) == r
            assert [next(j for j, x in enumerate(v) if x) for v in family] == leads
            # Pivot stability: vectors already pivoted stay fixed.
            for done in range(r - k, r):
                if k >= 1 and done >= r - k + 1:
                    assert family[done] == steps[k - 1][done]
        final = steps[-1]
        assert all(x in (0, 1) for v in final for x in v)
        supports = [{j for j, x in enumerate(v) if x} for v in final]
        assert all(supports)
        assert all(not (a & b) for i, a in enumerate(supports) for b in supports[i + 1:])


def test_degeneration_invariant_under_scramble():
    rng = random.Random(32)
    for _ in range(60):
        r, N = rng.randint(1, 3), rng.randint(3, 10)
        w = PlaneWitness(N, random_witness_vectors(rng, r, N))
        g = random_invertible(rng, r)
        s = random_admissible_s(rng, w)
        before = degenerate(normalize_star(w))
        after = degenerate(normalize_star(scramble(w, g, s)))
        assert _partition(before) == _partition(after)


def test_roundtrip_through_scramble():
    rng = random.Random(33)
    for _ in range(25):
        r = rng.randint(1, 3)
        P, S = defining_structure(random_family(rng, rng.randint(1, 2), r))
        canonical = canonical_form(P, S)
        w = witness_from_cayley(P, S)
        assert recover_cayley(P, w) == canonical
        scrambled = scramble(w, random_invertible(rng, r), random_admissible_s(rng, w))
        recovered = recover_cayley(P, scrambled)
        assert verify_cayley_structure(P, recovered)
        assert recovered == canonical
        pm = point_index_map(P)
        pi_prime = recovered.projection.matrix
        mu_map = mu(recovered.labels[1:], r)
        for j, u in enumerate(pm.points):
            e_j = [int(i == j) for i in range(pm.N)]
            assert tuple(linalg.matvec(pi_prime, u)) == mu_map(e_j)
