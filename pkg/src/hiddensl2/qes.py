"""Quasi-exactly-solvable cubic element in the n-labelled sl2 generators.

    T = A+ (J+_n + delta J0_n J0_n) + A1 J0_n J0_n (J-_n + 1/delta)
        + A2 J0_n J-_n + A3 J0_n + A4 J-_n + A5

preserves polynomials of degree <= n. The delta J0 J0 partner of J+ cancels
the E^-2 shift of b^2 a, so the difference realization stays three-point.
Isospectrality across representations is certified by exact equality of the
characteristic polynomials of the (n+1)-dimensional invariant blocks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactpoly import Poly, rat, rat_str
from .opalg import (
    DIFFERENTIAL,
    HeisenbergRep,
    ImageEscapesTruncation,
    MatrixQ,
    OpExpr,
    Operator,
    Scalar,
    matrix_in_basis,
    natural_basis,
    realize,
    shift_support,
)
from .sl2 import annihilator_word, jminus_word, jplus_word, jzero_word

__all__ = [
    "QesParams",
    "InvarianceViolation",
    "QesSpectrum",
    "qes_word",
    "build_qes",
    "three_point_check",
    "invariant_block",
    "char_poly",
    "char_poly_leverrier",
    "qes_spectrum",
    "qes_isospectral_check",
]

ROOT_TOL = 1e-9


class InvarianceViolation(ArithmeticError):
    def __init__(self, column: int, needed_degree: int | None = None):
        super().__init__(f"image of basis element {column} leaves the degree-<=n space")
        self.column = column
        self.needed_degree = needed_degree


@dataclass(frozen=True)
class QesParams:
    aplus: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a5: Fraction = Fraction(0)
    delta: Fraction = Fraction(1)
    n: int = 0

    def __post_init__(self):
        for name in ("aplus", "a1", "a2", "a3", "a4", "a5", "delta"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.delta == 0:
            raise ValueError("delta must be nonzero")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        object.__setattr__(self, "n", int(self.n))

    def to_json(self) -> dict:
        return {
            "Aplus": rat_str(self.aplus),
            "A1": rat_str(self.a1),
            "A2": rat_str(self.a2),
            "A3": rat_str(self.a3),
            "A4": rat_str(self.a4),
            "A5": rat_str(self.a5),
            "delta": rat_str(self.delta),
            "n": self.n,
        }


def qes_word(qp: QesParams, annihilator: Sequence | None = None) -> OpExpr:
    """The cubic word; ``annihilator`` optionally appends B(b) a^(n+1)."""
    n, d = qp.n, qp.delta
    jp, j0, jm = jplus_word(n), jzero_word(n), jminus_word(n)
    word = (
        Scalar(qp.aplus) * (jp + Scalar(d) * j0 * j0)
        + Scalar(qp.a1) * j0 * j0 * (jm + Scalar(1 / d))
        + Scalar(qp.a2) * j0 * jm
        + Scalar(qp.a3) * j0
        + Scalar(qp.a4) * jm
        + Scalar(qp.a5)
    )
    if annihilator is not None:
        word = word + annihilator_word(annihilator, n)
    return word


def build_qes(qp: QesParams, rep: HeisenbergRep) -> Operator:
    return realize(qes_word(qp), rep)


def three_point_check(qp: QesParams) -> bool:
    L = build_qes(qp, HeisenbergRep.difference(qp.delta))
    return shift_support(L) <= {-1, 0, 1}


def invariant_block(qp: QesParams, rep: HeisenbergRep, operator: Operator | None = None) -> MatrixQ:
    L = build_qes(qp, rep) if operator is None else operator
    try:
        return matrix_in_basis(L, natural_basis(rep), qp.n)
    except ImageEscapesTruncation as exc:
        raise InvarianceViolation(exc.column, exc.needed_degree) from None


def char_poly(M: MatrixQ) -> Poly:
    """Monic det(t I - M), coefficients lowest degree first.

    Berkowitz's division-free algorithm: only ring operations on the
    entries, so the result is exact over Q.
    """
    n = M.dim
    if n == 0:
        return Poly.const(1)
    a = [list(r) for r in M.rows]
    # vect holds coefficients of the char poly of the leading r x r block,
    # highest degree first, with sign convention det(M_r - t I) * (-1)^r
    vect = [Fraction(1), -a[0][0]]
    for r in range(1, n):
        R = a[r][:r]              # row r, columns < r
        C = [a[i][r] for i in range(r)]  # column r, rows < r
        Asub = [row[:r] for row in a[:r]]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        col = [Fraction(1), -a[r][r]]
        v = C
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, v)), Fraction(0)))
            v = [sum((Asub[i][j] * v[j] for j in range(r)), Fraction(0)) for i in range(r)]
        # multiply lower-triangular Toeplitz (r+2) x (r+1) by vect
        new = []
        for i in range(r + 2):
            s = Fraction(0)
            for j in range(min(i, r) + 1):
                s += col[i - j] * vect[j]
            new.append(s)
        vect = new
    return Poly(reversed(vect))


def char_poly_leverrier(M: MatrixQ) -> Poly:
    """Faddeev-LeVerrier; kept as an independent cross-check of :func:`char_poly`."""
    n = M.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = MatrixQ.zeros(n)
    I = MatrixQ.identity(n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + I.scale(coeffs[n - k + 1]))
        coeffs[n - k] = -sum(Mk.diagonal(), Fraction(0)) / k
    return Poly(coeffs)


def _poly_matrix_eval(p: Poly, M: MatrixQ) -> MatrixQ:
    n = M.dim
    acc = MatrixQ.zeros(n)
    I = MatrixQ.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ M + I.scale(c)
    return acc


@dataclass
class QesSpectrum:
    n: int
    charpoly: Poly
    roots: list[complex]
    approximate_multiplicity: list[int] = field(default_factory=list)
    isospectral: bool | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "charpoly": [rat_str(c) for c in self.charpoly.coeffs],
            "roots": [{"re": _clean(r.real), "im": _clean(r.imag)} for r in self.roots],
        }
        if self.isospectral is not None:
            out["isospectral"] = self.isospectral
        return out


def _clean(v: float) -> float:
    # canonical float text: no negative zero, 12 significant digits
    v = float(f"{v:.12g}")
    return 0.0 if v == 0 else v


def _refine(coeffs: list[float], r: complex, steps: int = 3) -> complex:
    p = np.poly1d(coeffs)
    dp = p.deriv()
    for _ in range(steps):
        d = dp(r)
        if d == 0:
            break
        step = p(r) / d
        if not np.isfinite(step):
            break
        r = r - step
    return complex(r)


def root_residual(charpoly: Poly, r: complex) -> float:
    """|p(r)| relative to sum |c_i| |r|^i."""
    scale = sum(abs(float(c)) * abs(r) ** i for i, c in enumerate(charpoly.coeffs))
    return abs(charpoly.evaluate_float(r)) / max(scale, 1e-300)


def qes_spectrum(qp: QesParams, rep: HeisenbergRep | None = None) -> QesSpectrum:
    rep = HeisenbergRep.difference(qp.delta) if rep is None else rep
    cp = char_poly(invariant_block(qp, rep))
    hi_first = [float(c) for c in reversed(cp.coeffs)]
    if len(hi_first) > 1:
        raw = np.roots(hi_first)
        roots = [_refine(hi_first, complex(r)) for r in raw]
    else:
        roots = []
    roots.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    mult = []
    for r in roots:
        mult.append(sum(1 for s in roots if abs(s - r) < 1e-6 * max(1.0, abs(r))))
    return QesSpectrum(qp.n, cp, roots, mult)


def qes_isospectral_check(qp: QesParams) -> bool:
    p_cont = char_poly(invariant_block(qp, DIFFERENTIAL))
    p_disc = char_poly(invariant_block(qp, HeisenbergRep.difference(qp.delta)))
    return p_cont == p_disc
