"""Calculus over finite-dimensional division algebras."""

from . import errors
from .algebra import (
    CANONICAL,
    COMPLEX,
    QUATERNIONS,
    AlgebraSpec,
    Element,
    RealMatrix4,
    Scalar,
    conj,
    embed_matrix,
    format_element,
    inverse,
    make_complex_algebra,
    make_quaternion_algebra,
    mul,
    norm_float,
    norm_sq,
    rotate,
)
from .dspace import (
    ComponentMap,
    DMatrix,
    DVector,
    apply_component_map,
    compose_component_maps,
    dmatrix_inverse,
    dual_basis,
    lin_comb,
    shift_components,
)
from .gateaux import (
    DiffConfig,
    MapEvaluator,
    differential_norm,
    differential_std_components,
    dstar,
    gateaux,
    jacobian,
    partial_gateaux,
    second_gateaux,
    star_d,
    verify_chain_rule,
    verify_product_rule,
)
from .linmap import (
    BigC,
    ComponentSum,
    CoordMatrix,
    PolyCoords,
    StdComponents,
    big_c,
    change_basis,
    check_symmetry,
    component_sum_to_std,
    compose_std,
    coord_to_std,
    eval_std,
    kernel_rank,
    polyform_coords,
    std_to_coord,
)
from .ncpoly import (
    Monomial,
    NCPoly,
    WordPoly,
    eval_poly,
    extensional_equal,
    sym_derivative,
    taylor_poly,
    word_eval,
)
from .taylor import (
    OdeRhs,
    TaylorSolution,
    euler_check,
    exp,
    exp_additivity_gap,
    exp_permutations,
    solve_ode_taylor,
)
from .verify import Report, run_verify_all

__all__ = [
    "AlgebraSpec",
    "BigC",
    "CANONICAL",
    "COMPLEX",
    "ComponentMap",
    "ComponentSum",
    "CoordMatrix",
    "DMatrix",
    "DVector",
    "DiffConfig",
    "Element",
    "MapEvaluator",
    "Monomial",
    "NCPoly",
    "OdeRhs",
    "PolyCoords",
    "QUATERNIONS",
    "RealMatrix4",
    "Report",
    "Scalar",
    "StdComponents",
    "TaylorSolution",
    "WordPoly",
    "apply_component_map",
    "big_c",
    "change_basis",
    "check_symmetry",
    "component_sum_to_std",
    "compose_component_maps",
    "compose_std",
    "conj",
    "coord_to_std",
    "differential_norm",
    "differential_std_components",
    "dmatrix_inverse",
    "dstar",
    "dual_basis",
    "embed_matrix",
    "errors",
    "euler_check",
    "eval_poly",
    "eval_std",
    "exp",
    "exp_additivity_gap",
    "exp_permutations",
    "extensional_equal",
    "format_element",
    "gateaux",
    "inverse",
    "jacobian",
    "kernel_rank",
    "lin_comb",
    "make_complex_algebra",
    "make_quaternion_algebra",
    "mul",
    "norm_float",
    "norm_sq",
    "partial_gateaux",
    "polyform_coords",
    "rotate",
    "run_verify_all",
    "second_gateaux",
    "shift_components",
    "solve_ode_taylor",
    "star_d",
    "std_to_coord",
    "sym_derivative",
    "taylor_poly",
    "verify_chain_rule",
    "verify_product_rule",
    "word_eval",
]
