"""Mueller-Stokes calculus: Jones, Mueller and coherency matrices, CP tests,
spectral decomposition, two-photon probes and a small multi-mode model."""

from .algebra import hermitian_eigensystem, hs_inner, kron, matricize, per, vectorize
from .bases import (
    bell_ket,
    bell_matrix,
    e_basis,
    epsilon_basis,
    gamma_matrix,
    gamma_matrix_alt,
    lambda_matrix,
    pauli_basis,
    upsilon_matrix,
)
from .decomposition import (
    CloudeDecomposition,
    KrausSet,
    apply_channel,
    check_trace_preserving,
    cloude_decompose,
    kraus_from_decomposition,
)
from .errors import (
    InvalidFrame,
    MuellerError,
    NonphysicalMatrix,
    NormalizationError,
    NotHermitian,
    NotReconstructible,
    SingularProbe,
)
from .mueller import (
    c_from_mueller,
    f_from_mueller,
    h_from_mueller,
    is_mueller_jones,
    is_physical,
    mueller_from_c,
    mueller_from_h,
    mueller_from_jones,
    mueller_from_jones_gamma,
    mueller_from_jones_kron,
    mueller_to_standard,
    standard_to_mueller,
)
from .polarization import (
    StokesConvention,
    StokesVector,
    check_physical_stokes,
    coherency_from_samples,
    coherency_from_stokes,
    convert_mueller_convention,
    convert_stokes,
    rescale,
    stokes_from_coherency,
    stokes_from_field,
)
from .quantum import (
    bell_state,
    dtilde,
    mems_target,
    reconstruct_mueller,
    scatter_one_photon,
    two_photon_stokes,
    werner_target,
)

__version__ = "0.1.0"

__all__ = [
    "CloudeDecomposition",
    "InvalidFrame",
    "KrausSet",
    "MuellerError",
    "NonphysicalMatrix",
    "NormalizationError",
    "NotHermitian",
    "NotReconstructible",
    "SingularProbe",
    "StokesConvention",
    "StokesVector",
    "apply_channel",
    "bell_ket",
    "bell_matrix",
    "bell_state",
    "c_from_mueller",
    "check_physical_stokes",
    "check_trace_preserving",
    "cloude_decompose",
    "coherency_from_samples",
    "coherency_from_stokes",
    "convert_mueller_convention",
    "convert_stokes",
    "dtilde",
    "e_basis",
    "epsilon_basis",
    "f_from_mueller",
    "gamma_matrix",
    "gamma_matrix_alt",
    "h_from_mueller",
    "hermitian_eigensystem",
    "hs_inner",
    "is_mueller_jones",
    "is_physical",
    "kraus_from_decomposition",
    "kron",
    "lambda_matrix",
    "matricize",
    "mems_target",
    "mueller_from_c",
    "mueller_from_h",
    "mueller_from_jones",
    "mueller_from_jones_gamma",
    "mueller_from_jones_kron",
    "mueller_to_standard",
    "pauli_basis",
    "per",
    "reconstruct_mueller",
    "rescale",
    "scatter_one_photon",
    "standard_to_mueller",
    "stokes_from_coherency",
    "stokes_from_field",
    "two_photon_stokes",
    "upsilon_matrix",
    "vectorize",
    "werner_target",
    "__version__",
]
