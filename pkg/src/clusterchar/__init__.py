"""Exact cluster-algebra and quantum-affine q-character engine.

The package computes with seeds and mutations, F-polynomials, q-characters
and their truncations, quiver-grassmannian Euler characteristics, and the
general-level ladder seeds, entirely over arbitrary-precision integers, and
ships verification pipelines that machine-check the worked identities these
structures satisfy.
"""

from .cluster import (
    Atlas,
    Seed,
    build_c1_seed,
    build_principal_seed,
    build_z_seed,
    cluster_expansion,
    compatible,
    enumerate_atlas,
    label_by_denominator,
    mutate_matrix,
)
from .fpoly import (
    f_poly,
    f_poly_combinatorial,
    f_poly_principal,
    reconstruct_cluster_variable,
    tropical_eval,
)
from .grass import euler_characteristic, geometric_fpoly, indecomposable_rep
from .laurent import LaurentPoly, var
from .levels import (
    build_gamma_ell_seed,
    grassmannian_check,
    sl2_diagonal,
    sl2_tensor_simple,
    verify_initial_tsystem,
)
from .qchar import (
    DecoratedQChar,
    decompose_product,
    frenkel_mukhin,
    kr_char,
    parse_ymono,
    phi_restricted,
    segment_decompose,
    sl2_simple_qchar,
    t_system_check,
    truncated_char_c1,
)
from .roots import DynkinData, almost_positive_roots, g_vector, positive_roots
from .verify import (
    periodic_tsystem_verify,
    two_restricted_check,
    verify_conjecture_c1,
)

__version__ = "0.1.0"

__all__ = [
    "Atlas", "Seed", "DynkinData", "LaurentPoly", "DecoratedQChar",
    "almost_positive_roots", "build_c1_seed", "build_gamma_ell_seed",
    "build_principal_seed", "build_z_seed", "cluster_expansion",
    "compatible", "decompose_product", "enumerate_atlas",
    "euler_characteristic", "f_poly", "f_poly_combinatorial",
    "f_poly_principal", "frenkel_mukhin", "g_vector", "geometric_fpoly",
    "grassmannian_check", "indecomposable_rep", "kr_char",
    "label_by_denominator", "mutate_matrix", "parse_ymono",
    "periodic_tsystem_verify", "phi_restricted", "positive_roots",
    "reconstruct_cluster_variable", "segment_decompose", "sl2_diagonal",
    "sl2_simple_qchar", "sl2_tensor_simple", "t_system_check",
    "tropical_eval", "truncated_char_c1", "two_restricted_check", "var",
    "verify_conjecture_c1", "verify_initial_tsystem",
]
