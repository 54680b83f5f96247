"""Discrete Morse theory on flag complexes of finite vector spaces."""

from .complex import ComplexStore, Subspace, build_complex, enumerate_subspaces, faces_of, f_vector
from .counting import (
    LabelStats,
    SphereCount,
    f_label,
    sphere_count_full,
    sphere_count_skeleton,
    stats,
    total_flag_identity,
)
from .field import FieldElem, FieldSpec, fp_add, fp_inv
from .homology import betti, boundary_matrix, euler
from .matrix import (
    MinimalMatrix,
    canonical_subspace,
    echelon_maximal,
    minimal_matrix_of_flag,
    random_step_a_basis,
)
from .morse import (
    FailureClass,
    Matching,
    build_matching,
    label_of_flag,
    partition,
    v_f,
    verify_matching,
)

__all__ = [
    "ComplexStore", "Subspace", "build_complex", "enumerate_subspaces", "faces_of", "f_vector",
    "LabelStats", "SphereCount", "f_label", "sphere_count_full", "sphere_count_skeleton", "stats",
    "total_flag_identity", "FieldElem", "FieldSpec", "fp_add", "fp_inv", "betti", "boundary_matrix",
    "euler", "MinimalMatrix", "canonical_subspace", "echelon_maximal", "minimal_matrix_of_flag",
    "random_step_a_basis", "FailureClass", "Matching", "build_matching", "label_of_flag", "partition",
    "v_f", "verify_matching",
]
