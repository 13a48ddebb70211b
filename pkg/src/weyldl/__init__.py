"""Exact certificates for the affineness criterion on twisted Weyl classes."""

from .exactnum import QuadExt, quad_cmp, quad_sign
from .rootdata import (
    Coweight,
    RootSystem,
    Twist,
    apply_twist_to_coweight,
    build_root_system,
    build_twist,
    pairing,
)
from .weyl import WeylElt, WeylGroup
from .conjugacy import (
    DeltaClass,
    compute_I_J_x,
    enumerate_delta_classes,
    shift_closure,
    supp_delta,
)
from .criterion import (
    Certificate,
    build_forward_system,
    build_inverse_system,
    build_star_system,
    certify_min_element,
    check_certificate,
    feasible,
    minimal_q,
)
from .lifting import (
    combine_cyclic_factors,
    combine_orthogonal_factors,
    constructive_certificate,
    extend_via_parabolic_step,
    lift_to_full,
)
from .casetables import load_case_records, verify_all, verify_case

__all__ = [
    "QuadExt",
    "quad_sign",
    "quad_cmp",
    "RootSystem",
    "Coweight",
    "Twist",
    "build_root_system",
    "build_twist",
    "apply_twist_to_coweight",
    "pairing",
    "WeylGroup",
    "WeylElt",
    "DeltaClass",
    "enumerate_delta_classes",
    "shift_closure",
    "supp_delta",
    "compute_I_J_x",
    "Certificate",
    "build_forward_system",
    "build_inverse_system",
    "build_star_system",
    "feasible",
    "check_certificate",
    "certify_min_element",
    "minimal_q",
    "lift_to_full",
    "combine_orthogonal_factors",
    "combine_cyclic_factors",
    "extend_via_parabolic_step",
    "constructive_certificate",
    "load_case_records",
    "verify_case",
    "verify_all",
]

__version__ = "0.1.0"
