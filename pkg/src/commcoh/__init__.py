"""Exact cohomology for commutative Lie algebras in characteristic 2."""

from .field import GF2, FiniteField, Scalar, binom_mod2, make_field
from .linalg import (
    Matrix,
    SizeCapError,
    Subspace,
    entry_cap_override,
    image_basis,
    kernel_basis,
    quotient_basis,
    rank,
    solve,
)
from .algebra import (
    AlgebraPresentation,
    AxiomError,
    ModulePresentation,
    PresentationError,
    abelian,
    adjoint_module,
    check_axioms,
    derivation_space,
    dim2,
    dual_module,
    heisenberg,
    import_algebra,
    import_module,
    module_from_actions,
    span_subalgebra,
    trivial_module,
    zassenhaus_e,
    zassenhaus_f,
)
from .cochain import (
    Cochain,
    CochainSpace,
    DegreeCapError,
    cochain_space,
    contract,
    degree_cap_override,
    delta,
    differential_matrix,
    evaluate,
    include_cochain,
    inclusion_matrix,
    lie_derivative,
)
from .cohomology import (
    CohomologyResult,
    NotACocycleError,
    abelianization_dual_dim,
    alternating_invariant_forms,
    base_change,
    central_extension,
    coboundary_witness,
    cohomology,
    comparison_comm_to_leibniz,
    comparison_lie_to_comm,
    exact_sequence_check,
    invariants_subspace,
    outer_derivation_dim,
    split_central_extension,
)
from .cup import RingTable, cup, ring_table
from .morse import (
    BasedComplex,
    Matching,
    MorseError,
    complex_from_cochains,
    greedy_matching,
    heisenberg_matching,
    heisenberg_unmatched_cells,
    morse_complex,
    validate_matching,
)

__all__ = [name for name in dir() if not name.startswith("_")]
