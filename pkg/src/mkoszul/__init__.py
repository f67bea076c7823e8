"""Exact computations for m-Koszul Artin-Schelter regular algebras given by twisted superpotentials."""

from .errors import (
    CharacteristicError,
    ConsistencyError,
    FrobeniusError,
    GorensteinError,
    NakayamaError,
    NotAutomorphismError,
    SuperpotentialError,
)
from .field import GF, QQ
from .graded import GradedAlgebra, check_m_koszul, gorenstein_dimension, rho
from .potential import (
    Potential,
    Presentation,
    derivation_quotient,
    extract_superpotential,
    jacobian_algebra,
    symmetrize_c,
    symmetrize_c_tilde,
    twisting_map,
    w_space,
)
from .symmetry import hdet, is_automorphism, is_calabi_yau, nakayama_via_phi, nakayama_via_Q
from .tensor import LinearMap, Tensor, TensorSubspace

__version__ = "0.1.0"
