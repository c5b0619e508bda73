"""Verification toolkit for linear factorizations of extended Hamiltonians.

The package constructs the factorization matrices for single-particle and
N-particle systems, proves their determinant and null-space properties
numerically, derives the spin-coupled Hamiltonian through exact polynomial
calculus, discretizes the one-dimensional problem as a first-order matrix
pencil, and evaluates the weak-field Zeeman structure of a bound pair of
opposite charges.
"""

from .extham import (
    FactorizationReport,
    OffShellError,
    ParticleSpec,
    Sample1D,
    SystemSample,
    determinant_report,
    determinant_report_1d,
    energy_defect,
    energy_defect_1d,
    factor_matrix,
    factor_matrix_1d,
    kinetic_block,
    null_basis,
    null_vector_1d,
    random_sample,
    random_sample_1d,
)
from .linalg import (
    SingularBlockError,
    block_det_schur,
    det_lu,
    hermitian_eigen,
    kron,
    logabsdet_lu,
    null_space,
    schur_factor_check,
)
from .polynomials import DegreeOverflowError, Polynomial, PolySpinor, random_polynomial
from .quantize import (
    PENCIL_SINGULARITY_GUARD,
    FieldConfig,
    Grid1D,
    Pencil1D,
    apply_matrix,
    apply_momentum,
    apply_scalar,
    auxiliary_component,
    coupled_pencil,
    covariant_momentum,
    eliminate_pencil,
    hamiltonian_equivalence_residual,
    kinetic_square_residual,
    momentum_matrix,
    pencil_root_distance,
    random_spinor,
    sigma_covariant,
    spin_field_matrix,
    total_spin_coupling_matrix,
)
from .spin import (
    CommutatorEntry,
    CommutatorReport,
    commutator_table,
    embed_spin,
    pauli,
    product_identity_residual,
    spin_dot,
)
from .units import ATOMIC, SPEED_OF_LIGHT, Units
from .zeeman import (
    LevelLabel,
    LevelRow,
    MassDecomposition,
    ZeemanSystem,
    bohr_energy,
    decompose_masses,
    lamb_g_factor,
    larmor_frequency,
    level_shift,
    momentum_transform_residual,
    potential_split_residual,
    radial_eigenvalues,
    splitting_table,
    zeeman_level,
)

__version__ = "0.1.0"

__all__ = [
    "ATOMIC",
    "PENCIL_SINGULARITY_GUARD",
    "SPEED_OF_LIGHT",
    "CommutatorEntry",
    "CommutatorReport",
    "DegreeOverflowError",
    "FactorizationReport",
    "FieldConfig",
    "Grid1D",
    "LevelLabel",
    "LevelRow",
    "MassDecomposition",
    "OffShellError",
    "ParticleSpec",
    "Pencil1D",
    "PolySpinor",
    "Polynomial",
    "Sample1D",
    "SingularBlockError",
    "SystemSample",
    "Units",
    "ZeemanSystem",
    "apply_matrix",
    "apply_momentum",
    "apply_scalar",
    "auxiliary_component",
    "block_det_schur",
    "bohr_energy",
    "commutator_table",
    "coupled_pencil",
    "covariant_momentum",
    "decompose_masses",
    "det_lu",
    "determinant_report",
    "determinant_report_1d",
    "eliminate_pencil",
    "embed_spin",
    "energy_defect",
    "energy_defect_1d",
    "factor_matrix",
    "factor_matrix_1d",
    "hamiltonian_equivalence_residual",
    "hermitian_eigen",
    "kinetic_block",
    "kinetic_square_residual",
    "kron",
    "lamb_g_factor",
    "larmor_frequency",
    "level_shift",
    "logabsdet_lu",
    "momentum_matrix",
    "momentum_transform_residual",
    "null_basis",
    "null_space",
    "null_vector_1d",
    "pauli",
    "pencil_root_distance",
    "potential_split_residual",
    "product_identity_residual",
    "radial_eigenvalues",
    "random_polynomial",
    "random_sample",
    "random_sample_1d",
    "random_spinor",
    "schur_factor_check",
    "sigma_covariant",
    "spin_dot",
    "spin_field_matrix",
    "splitting_table",
    "total_spin_coupling_matrix",
    "zeeman_level",
]
