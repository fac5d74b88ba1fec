"""Exact-arithmetic toolkit relating polynomial-system solvability to
sparsifying shifts: quadratization, constant normalization, hard-instance
construction, gap amplification, linear-system encodings, and brute-force
verification oracles."""

from .amplifier import (
    AmplifiedInstance,
    GapParams,
    amplified_shift,
    amplify,
    copies_for_gap,
    gap_alpha,
)
from .circuits import ADD, CONST, INPUT, MUL, Circuit, load_circuit, save_circuit
from .errors import (
    ArityError,
    CapExceededError,
    FormatError,
    InternalConsistencyError,
    InvalidGammaError,
    NoReductionError,
    NotASolutionError,
    PreconditionError,
    RingMismatchError,
    ShiftForgeError,
    StructureError,
    UnsupportedDomainError,
)
from .hn_reduce import (
    HNInstance,
    ReductionWitnessMap,
    TriviallySolvable,
    build_hn_instance,
    declared_sparsity_bound,
    load_witness,
    reduce_hn,
    save_witness,
    shift_instance,
    shift_to_solution,
    solution_to_shift,
)
from .max3lin import (
    Max3LinSystem,
    QuadraticEncoding,
    count_satisfied,
    embed_assignment,
    encode_max3lin,
    gen_max3lin,
    load_max3lin,
    project_assignment,
    save_max3lin,
    shifted_linear_coeff,
)
from .oracles import (
    SearchDomain,
    SearchReport,
    maxsat,
    search_min_sparsity,
    solve_system,
    verify_hn_roundtrip,
    verify_max3lin,
)
from .quadratizer import (
    EquationSystem,
    ExtensionRecipe,
    check_solution,
    extend_solution,
    first_constant_index,
    is_quadratized_shape,
    load_system,
    normalize_constants,
    quadratize_circuit,
    quadratize_sparse,
    save_system,
)
from .rings import Ring, RingElement, ZZ, QQ, modular, prime_field
from .sparsepoly import SparsePoly, load_poly, parse_vector, save_poly

__version__ = "0.1.0"

__all__ = [
    "ADD",
    "AmplifiedInstance",
    "ArityError",
    "CapExceededError",
    "Circuit",
    "CONST",
    "EquationSystem",
    "ExtensionRecipe",
    "FormatError",
    "GapParams",
    "HNInstance",
    "INPUT",
    "InternalConsistencyError",
    "InvalidGammaError",
    "Max3LinSystem",
    "MUL",
    "NoReductionError",
    "NotASolutionError",
    "PreconditionError",
    "QQ",
    "QuadraticEncoding",
    "ReductionWitnessMap",
    "Ring",
    "RingElement",
    "RingMismatchError",
    "SearchDomain",
    "SearchReport",
    "ShiftForgeError",
    "SparsePoly",
    "StructureError",
    "TriviallySolvable",
    "UnsupportedDomainError",
    "ZZ",
    "amplified_shift",
    "amplify",
    "build_hn_instance",
    "check_solution",
    "copies_for_gap",
    "count_satisfied",
    "declared_sparsity_bound",
    "embed_assignment",
    "encode_max3lin",
    "extend_solution",
    "first_constant_index",
    "gap_alpha",
    "gen_max3lin",
    "is_quadratized_shape",
    "load_circuit",
    "load_max3lin",
    "load_poly",
    "load_system",
    "load_witness",
    "maxsat",
    "modular",
    "normalize_constants",
    "parse_vector",
    "prime_field",
    "project_assignment",
    "quadratize_circuit",
    "quadratize_sparse",
    "reduce_hn",
    "save_circuit",
    "save_max3lin",
    "save_poly",
    "save_system",
    "save_witness",
    "search_min_sparsity",
    "shift_instance",
    "shift_to_solution",
    "shifted_linear_coeff",
    "solution_to_shift",
    "solve_system",
    "verify_hn_roundtrip",
    "verify_max3lin",
]
