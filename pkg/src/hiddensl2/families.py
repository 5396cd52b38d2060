"""Classical discrete families as parameter choices of the three-point operator.

All presets use delta = 1 and A5 = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactpoly import MONOMIAL, Poly, falling_factorial, poly_divrem, rat, rat_str
from .opalg import HeisenbergRep, MatrixQ
from .solvable import (
    DegenerateSpectrum,
    SolvableParams,
    eigenpolys,
    explicit_three_point,
    triangular_eigenvector,
)

__all__ = [
    "Hahn",
    "HahnTilde",
    "Meixner",
    "Charlier",
    "FamilyPreset",
    "NonzeroRemainder",
    "preset_params",
    "family_polynomial",
    "hahn_factorization",
    "preset_from_name",
    "FAMILY_NAMES",
]


class NonzeroRemainder(ArithmeticError):
    """x^(N) failed to divide a polynomial that should be divisible by it."""

    def __init__(self, remainder: Poly, where: str = ""):
        super().__init__(f"nonzero remainder {remainder} {where}".strip())
        self.remainder = remainder


def _rats(obj):
    for name in obj.__dataclass_fields__:
        object.__setattr__(obj, name, rat(getattr(obj, name)))


@dataclass(frozen=True)
class Hahn:
    alpha: Fraction
    beta: Fraction
    N: Fraction

    def __post_init__(self):
        _rats(self)


@dataclass(frozen=True)
class HahnTilde:
    """Analytically-continued Hahn."""

    mu: Fraction
    nu: Fraction
    N: Fraction

    def __post_init__(self):
        _rats(self)


@dataclass(frozen=True)
class Meixner:
    gamma: Fraction
    mu: Fraction

    def __post_init__(self):
        _rats(self)


@dataclass(frozen=True)
class Charlier:
    mu: Fraction

    def __post_init__(self):
        _rats(self)


FamilyPreset = Union[Hahn, HahnTilde, Meixner, Charlier]


def preset_params(f: FamilyPreset) -> SolvableParams:
    if isinstance(f, Hahn):
        a, b, N = f.alpha, f.beta, f.N
        return SolvableParams(-1, N - b - 2, -a - b - 1, (b + 1) * (N - 1), 0, 1)
    if isinstance(f, HahnTilde):
        mu, nu, N = f.mu, f.nu, f.N
        return SolvableParams(1, 2 - 2 * N - nu, 1 - 2 * N - mu - nu, (N + nu - 1) * (N - 1), 0, 1)
    if isinstance(f, Meixner):
        return SolvableParams(0, -f.mu, f.mu - 1, f.gamma * f.mu, 0, 1)
    if isinstance(f, Charlier):
        return SolvableParams(0, 0, -1, f.mu, 0, 1)
    raise TypeError(f"unknown family preset {f!r}")


def family_polynomial(f: FamilyPreset, k: int) -> tuple[Poly, Fraction]:
    """Monic degree-k eigenpolynomial (difference representation) and its eigenvalue."""
    params = preset_params(f)
    res = eigenpolys(params, HeisenbergRep.difference(params.delta), k)
    entry = res.entries[k]
    return entry.poly, entry.eigenvalue


def _integer_N(f) -> int:
    if not isinstance(f, (Hahn, HahnTilde)):
        raise TypeError("factorization applies to Hahn and HahnTilde presets")
    if f.N.denominator != 1 or f.N < 1:
        raise ValueError("N must be a positive integer")
    return int(f.N)


def _factor_in_subspace(f: FamilyPreset, k: int, N: int) -> Poly:
    # L maps x^(N) * Q[x] into itself; solve for the eigenvector inside it.
    params = preset_params(f)
    L = explicit_three_point(params)
    ff = falling_factorial(N, 1)
    m = k - N
    cols = []
    for j in range(m + 1):
        image = L(ff * Poly.monomial(j))
        q, r = poly_divrem(image, ff)
        if not r.is_zero():
            raise NonzeroRemainder(r, f"for L(x^({N}) x^{j})")
        cols.append([q[i] for i in range(m + 1)])
    M = MatrixQ([[cols[j][i] for j in range(m + 1)] for i in range(m + 1)])
    lam = params.eigenvalue(k)
    if M[m, m] != lam:
        raise ArithmeticError(f"diagonal {M[m, m]} disagrees with eigenvalue {lam}")
    c = triangular_eigenvector(M, m, lam, free_if_consistent=True)
    quotient = Poly(c)
    h = ff * quotient
    if not (L(h) - h.scale(lam)).is_zero():
        raise ArithmeticError("factorized eigenpolynomial has nonzero residual")
    return quotient


def hahn_factorization(f: FamilyPreset, k: int) -> Poly:
    """Quotient of the degree-k (k >= N) eigenpolynomial by x^(N).

    When the spectrum through k is non-degenerate the eigenpolynomial is
    unique and is divided directly. Otherwise (e.g. HahnTilde with
    mu + nu an integer, where lambda_j = lambda_k for j + k = 2N - 1 + mu + nu)
    the eigenpolynomial is taken from the invariant subspace x^(N) Q[x],
    whose invariance is itself verified by exact division.
    """
    N = _integer_N(f)
    if k < N:
        raise ValueError("k must be at least N")
    ff = falling_factorial(N, 1)
    try:
        h, _ = family_polynomial(f, k)
    except DegenerateSpectrum:
        return _factor_in_subspace(f, k, N)
    q, r = poly_divrem(h, ff)
    if not r.is_zero():
        raise NonzeroRemainder(r, f"dividing h_{k} by x^({N})")
    return q


FAMILY_NAMES = ("hahn", "hahn-tilde", "meixner", "charlier")


def preset_from_name(name: str, **kw) -> FamilyPreset:
    """Build a preset from its CLI name; missing parameters raise ``KeyError``."""
    if name == "hahn":
        return Hahn(kw["alpha"], kw["beta"], kw["N"])
    if name == "hahn-tilde":
        return HahnTilde(kw["mu"], kw["nu"], kw["N"])
    if name == "meixner":
        return Meixner(kw["gamma"], kw["mu"])
    if name == "charlier":
        return Charlier(kw["mu"])
    raise ValueError(f"unknown family {name!r}")


def preset_to_json(f: FamilyPreset) -> dict:
    out = {"family": {Hahn: "hahn", HahnTilde: "hahn-tilde", Meixner: "meixner", Charlier: "charlier"}[type(f)]}
    for name in f.__dataclass_fields__:
        out[name] = rat_str(getattr(f, name))
    return out
