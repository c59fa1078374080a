from ._core import (
    AlignmentError,
    ContractError,
    DataError,
    DomainError,
    Grid,
    GridFunction,
    ParameterError,
    ParseError,
    StructuralError,
    a1_constant,
    ap_constant,
    apply_T,
    bmo_norm,
    commutator,
    dominate,
    generate_function,
    hl_maximal,
    luxemburg_norm,
    orlicz_maximal,
    run_scenario,
    tail_constant,
    verify_family,
)

__all__ = [
    "AlignmentError",
    "ContractError",
    "DataError",
    "DomainError",
    "Grid",
    "GridFunction",
    "ParameterError",
    "ParseError",
    "StructuralError",
    "a1_constant",
    "ap_constant",
    "apply_T",
    "bmo_norm",
    "commutator",
    "dominate",
    "generate_function",
    "hl_maximal",
    "luxemburg_norm",
    "orlicz_maximal",
    "run_scenario",
    "tail_constant",
    "verify_family",
]
