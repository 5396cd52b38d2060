"""The exactly-solvable cubic element and its polynomial eigenproblem.

The operator is the word

    A1 J0 J0 (J- + 1/delta) + A2 J0 J- + A3 J0 + A4 J- + A5

in the n = 0 generators. Realized with finite differences it is a
three-point operator A(x) f(x+delta) - B(x) f(x) + C(x) f(x-delta); realized
with derivatives it is a third-order differential operator. Both are
degree-non-increasing, so their matrices on polynomials are triangular with
diagonal A1 k^2/delta + A3 k + A5.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactpoly import MONOMIAL, Basis, Poly, change_basis, rat, rat_str, umbral_map
from .opalg import (
    DIFFERENTIAL,
    DiffOp,
    HeisenbergRep,
    MatrixQ,
    OpExpr,
    Operator,
    Scalar,
    ShiftOp,
    matrix_in_basis,
    natural_basis,
    realize,
)
from .sl2 import Check, jminus_word, jzero_word

__all__ = [
    "SolvableParams",
    "SpectralEntry",
    "SpectralResult",
    "DegenerateSpectrum",
    "solvable_word",
    "build_operator",
    "explicit_three_point",
    "three_point_coefficients",
    "spectrum",
    "eigenpolys",
    "triangular_eigenvector",
    "differential_operator",
    "isospectral_check",
    "umbral_transfer_check",
    "fock_matrix_invariance",
    "Report",
]


class DegenerateSpectrum(ArithmeticError):
    """Two requested eigenvalues coincide, so back-substitution has a zero pivot."""

    def __init__(self, k: int, j: int):
        j, k = sorted((j, k))
        super().__init__(f"lambda_{j} == lambda_{k}")
        self.k = j
        self.j = k

    def to_json(self) -> dict:
        return {"error": "DegenerateSpectrum", "k": self.k, "j": self.j}


@dataclass(frozen=True)
class SolvableParams:
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a5: Fraction = Fraction(0)
    delta: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a5", "delta"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.delta == 0:
            raise ValueError("delta must be nonzero")

    def eigenvalue(self, k: int) -> Fraction:
        return self.a1 * k * k / self.delta + self.a3 * k + self.a5

    def to_json(self) -> dict:
        return {
            "A1": rat_str(self.a1),
            "A2": rat_str(self.a2),
            "A3": rat_str(self.a3),
            "A4": rat_str(self.a4),
            "A5": rat_str(self.a5),
            "delta": rat_str(self.delta),
        }


def solvable_word(params: SolvableParams) -> OpExpr:
    j0, jm = jzero_word(0), jminus_word(0)
    p = params
    return (
        Scalar(p.a1) * j0 * j0 * (jm + Scalar(1 / p.delta))
        + Scalar(p.a2) * j0 * jm
        + Scalar(p.a3) * j0
        + Scalar(p.a4) * jm
        + Scalar(p.a5)
    )


def build_operator(params: SolvableParams, rep: HeisenbergRep) -> Operator:
    return realize(solvable_word(params), rep)


def three_point_coefficients(params: SolvableParams) -> tuple[Poly, Poly, Poly]:
    """(A, B, C) of A(x) f(x+delta) - B(x) f(x) + C(x) f(x-delta)."""
    a1, a2, a3, a4, a5, d = (
        params.a1, params.a2, params.a3, params.a4, params.a5, params.delta,
    )
    A_ = Poly([a4 / d, a2 / d**2, a1 / d**3])
    minus_B = Poly([a5 - a4 / d, a1 / d**2 - 2 * a2 / d**2 + a3 / d, -2 * a1 / d**3])
    C_ = Poly([0, -(a1 / d**2 - a2 / d**2 + a3 / d), a1 / d**3])
    return A_, -minus_B, C_


def explicit_three_point(params: SolvableParams) -> ShiftOp:
    A_, B_, C_ = three_point_coefficients(params)
    return ShiftOp(params.delta, {1: A_, 0: -B_, -1: C_})


def spectrum(params: SolvableParams, kmax: int) -> list[Fraction]:
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    return [params.eigenvalue(k) for k in range(kmax + 1)]


@dataclass(frozen=True)
class SpectralEntry:
    k: int
    eigenvalue: Fraction
    poly: Poly

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "lambda": rat_str(self.eigenvalue),
            "poly": [rat_str(c) for c in self.poly.coeffs],
        }


@dataclass
class SpectralResult:
    params: SolvableParams
    rep: HeisenbergRep
    entries: list[SpectralEntry]
    basis: Basis = MONOMIAL

    def __getitem__(self, k: int) -> SpectralEntry:
        return self.entries[k]

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "rep": self.rep.kind,
            "entries": [e.to_json() for e in self.entries],
        }


def _check_distinct(lams: Sequence[Fraction]):
    for k in range(len(lams)):
        for j in range(k):
            if lams[j] == lams[k]:
                raise DegenerateSpectrum(j, k)


def triangular_eigenvector(
    M: MatrixQ, k: int, lam: Fraction, *, free_if_consistent: bool = False
) -> list[Fraction]:
    """Monic eigenvector with top index ``k`` of an upper-triangular ``M``.

    Back-substitutes ``(lam - M[i][i]) c_i = sum_{i<j<=k} M[i][j] c_j``.
    A vanishing pivot raises :class:`DegenerateSpectrum` unless
    ``free_if_consistent`` is set and the right-hand side is zero too, in
    which case the free coordinate is fixed to 0.
    """
    c = [Fraction(0)] * (k + 1)
    c[k] = Fraction(1)
    for i in range(k - 1, -1, -1):
        rhs = sum((M[i, j] * c[j] for j in range(i + 1, k + 1) if c[j]), Fraction(0))
        pivot = lam - M[i, i]
        if pivot == 0:
            if free_if_consistent and rhs == 0:
                continue
            raise DegenerateSpectrum(i, k)
        c[i] = rhs / pivot
    return c


def eigenpolys(params: SolvableParams, rep: HeisenbergRep, kmax: int) -> SpectralResult:
    """Monic eigenpolynomials of degree 0..kmax, monomial coefficients."""
    lams = spectrum(params, kmax)
    _check_distinct(lams)
    L = build_operator(params, rep)
    M = matrix_in_basis(L, MONOMIAL, kmax)
    entries = []
    for k in range(kmax + 1):
        lam = M[k, k]
        c = triangular_eigenvector(M, k, lam)
        entries.append(SpectralEntry(k, lam, Poly(c)))
    return SpectralResult(params, rep, entries)


def differential_operator(params: SolvableParams) -> DiffOp:
    """Closed-form third-order operator isospectral to the three-point one."""
    a1, a2, a3, a4, a5, d = (
        params.a1, params.a2, params.a3, params.a4, params.a5, params.delta,
    )
    return DiffOp(
        [
            Poly([a5]),
            Poly([a4, a1 / d + a3]),
            Poly([0, a1 + a2, a1 / d]),
            Poly([0, 0, a1]),
        ]
    )


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))

    def to_json(self) -> dict:
        out = {"name": self.name, "checks": [c.to_json() for c in self.checks]}
        out.update(self.data)
        out["pass"] = self.passed
        return out


def isospectral_check(params: SolvableParams, kmax: int) -> Report:
    shift_diag = matrix_in_basis(explicit_three_point(params), MONOMIAL, kmax).diagonal()
    diff_diag = matrix_in_basis(differential_operator(params), MONOMIAL, kmax).diagonal()
    lams = spectrum(params, kmax)
    rep = Report("isospectral")
    rep.add("shift_vs_differential", shift_diag == diff_diag)
    rep.add("shift_vs_formula", shift_diag == lams)
    rep.add("differential_vs_formula", diff_diag == lams)
    rep.data = {
        "params": params.to_json(),
        "kmax": kmax,
        "diagonal": [rat_str(v) for v in shift_diag],
    }
    return rep


def umbral_transfer_check(params: SolvableParams, kmax: int) -> Report:
    """Umbral images of the continuum eigenpolynomials solve the difference problem."""
    cont = eigenpolys(params, DIFFERENTIAL, kmax)
    disc = eigenpolys(params, HeisenbergRep.difference(params.delta), kmax)
    L = explicit_three_point(params)
    rep = Report("umbral_transfer")
    for ec, ed in zip(cont.entries, disc.entries):
        image = umbral_map(ec.poly, params.delta)
        residual = L(image) - image.scale(ec.eigenvalue)
        ok = image == ed.poly and ec.eigenvalue == ed.eigenvalue and residual.is_zero()
        rep.add(f"k={ec.k}", ok, "" if ok else f"image {image} vs {ed.poly}")
    rep.data = {"params": params.to_json(), "kmax": kmax}
    return rep


DEFAULT_DELTAS = (Fraction(1), Fraction(1, 2), Fraction(-2, 3))


def fock_matrix_invariance(word: OpExpr, dmax: int, deltas: Sequence = DEFAULT_DELTAS) -> bool:
    """Does ``word`` have the same matrix in both reps' natural bases?

    Columns 0..dmax are compared; rows run up to ``dmax + word.length()`` so
    degree-raising words are captured without truncation.
    """
    rows = dmax + word.length()
    ref = matrix_in_basis(realize(word, DIFFERENTIAL), MONOMIAL, rows, cols=dmax + 1)
    for d in deltas:
        rep = HeisenbergRep.difference(d)
        other = matrix_in_basis(realize(word, rep), natural_basis(rep), rows, cols=dmax + 1)
        if other != ref:
            return False
    return True
