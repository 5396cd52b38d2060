"""Hidden sl2 structure of finite-difference equations with polynomial solutions.

Exact (rational) construction of the Heisenberg pair and the sl2 generators
in differential and finite-difference form, the exactly- and
quasi-exactly-solvable operators built from them, their polynomial
eigenfunctions, and checks of the identities relating the two realizations.
"""
from .exactpoly import (
    MONOMIAL,
    Basis,
    Poly,
    change_basis,
    falling_factorial,
    poly_divrem,
    poly_mul,
    poly_shift,
    rat,
    rat_str,
    umbral_map,
)
from .opalg import (
    DIFFERENTIAL,
    A,
    B,
    DiffOp,
    HeisenbergRep,
    ImageEscapesTruncation,
    MatrixQ,
    OpExpr,
    Scalar,
    ShiftOp,
    commutator,
    matrix_in_basis,
    natural_basis,
    realize,
    shift_support,
)
from .sl2 import (
    Sl2Triple,
    annihilator_check,
    explicit_difference_generators,
    heisenberg_pair,
    sl2_generators,
    verify_relations,
)
from .solvable import (
    DegenerateSpectrum,
    SolvableParams,
    SpectralResult,
    build_operator,
    differential_operator,
    eigenpolys,
    explicit_three_point,
    fock_matrix_invariance,
    isospectral_check,
    spectrum,
    umbral_transfer_check,
)
from .families import (
    Charlier,
    Hahn,
    HahnTilde,
    Meixner,
    NonzeroRemainder,
    family_polynomial,
    hahn_factorization,
    preset_params,
)
from .qes import (
    InvarianceViolation,
    QesParams,
    build_qes,
    char_poly,
    invariant_block,
    qes_isospectral_check,
    qes_spectrum,
    three_point_check,
)

__version__ = "0.1.0"
