"""Grassmann algebra, osp(1|2) super linear algebra, superqubit states, and
supersymmetric entanglement invariants with classical reduction oracles."""

from .grassmann import (
    PRUNE_TOL,
    VANISH_TOL,
    AlgebraContext,
    ContextMismatch,
    GrassmannNumber,
    NoInverse,
    SingularBody,
    analytic_apply,
    gn_exp,
    gn_inv_sqrt,
    gn_inverse,
    gn_power,
    gn_sqrt,
    star,
    superstar,
)
from .superlinear import (
    BothBlocksSingular,
    GradedShape,
    ImpureGrade,
    ImpureScalar,
    ShapeMismatch,
    Supermatrix,
    SuperVector,
    berezinian,
    matrix_exp,
    matvec,
    superadjoint,
    superbracket,
    supertrace,
    supertranspose,
    tensor_product,
)
from .states import (
    BULLET,
    BadSlots,
    ParityViolation,
    SuperDensityMatrix,
    SuperState,
    Unphysical,
    all_kets,
    boson_fermion_count,
    extend_context,
    ket_from_text,
    ket_text,
    make_state,
)
from .osp import (
    BadSlot,
    BracketMismatch,
    GeneratorSet,
    OspParams,
    act_generator,
    act_matrix_slot,
    act_named_generator,
    bracket_table,
    build_generators,
    check_group_element,
    check_rescaled_brackets,
    check_uosp_algebra_element,
    check_uosp_group_element,
    is_osp_algebra_element,
    uosp_algebra_element,
    uosp_compact_basis,
)
from .invariants import (
    ClassificationError,
    CovariantReport,
    berezinian_compare,
    cayley_hyperdet,
    cayley_hyperdet_quartic,
    classify3,
    classify_super,
    coefficient_supermatrix,
    covariant_report,
    det2,
    gamma_covariants,
    infinitesimal_invariance_check,
    local_entropies,
    perturbed_state,
    sdet,
    sdet_quadratic_form,
    sdet_supertrace_form,
    super_gamma,
    super_t,
    super_three_tangle,
    super_two_tangle,
    superhyperdet,
    superhyperdet_routes,
    t_covariance_check,
    t_state,
    t_tensor,
    three_tangle,
    two_tangle,
)
from .parser import ParseError, parse_state, state_to_text

__version__ = "0.1.0"
