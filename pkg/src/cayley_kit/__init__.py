"""Exact tools for Cayley polytopes and lattice width."""

from .cayley import (CayleyStructure, Verification, canonical_form, defining_structure,
                     extract_summands, find_cayley_structure, max_cayley_length,
                     verify_cayley_structure)
from .degeneration import (IndexedPointMap, PlaneWitness, degenerate, degeneration_steps,
                           labels, mu, normalize_star, point_index_map, recover_cayley,
                           scramble, solve_pi_prime, witness_from_cayley)
from .errors import (CayleyKitError, DegenerationError, DependentWitnessError,
                     DimensionMismatchError, InvalidCertificateError,
                     NotFullDimensionalError, PiPrimeError, SingularMatrixError,
                     StarConditionError)
from .polytope import (AffineLatticeMap, LatticePolytope, apply_map, cayley_sum,
                       contains, dilate, dimension, is_unimodular_simplex, lattice_points,
                       restrict_to_affine_hull, simplex, vertices)
from .toric import ehrhart_count, normalized_volume, seshadri_is_one, spanned_lattice_index
from .width import WidthCertificate, lattice_width, width_along, width_one_directions

__version__ = "0.1.0"
