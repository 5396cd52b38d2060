"""sl2 generators built from a Heisenberg pair, and exact relation checks.

With ``[a, b] = 1`` the operators

    J+_n = b^2 a - n b,   J0_n = b a - n/2,   J-_n = a

satisfy ``[J0, J+] = J+``, ``[J0, J-] = -J-`` and ``[J+, J-] = -2 J0``; on
polynomials they leave the degree-<=n space invariant. Everything here is
checked by applying operators to basis polynomials, exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactpoly import Poly, falling_factorial, rat, rat_str
from .opalg import (
    DIFFERENTIAL,
    A,
    B,
    HeisenbergRep,
    OpExpr,
    Operator,
    Scalar,
    ShiftOp,
    commutator,
    natural_basis,
    realize,
)
from .exactpoly import MONOMIAL

__all__ = [
    "HeisenbergRep",
    "DIFFERENTIAL",
    "Sl2Triple",
    "Check",
    "RelationReport",
    "jplus_word",
    "jzero_word",
    "jminus_word",
    "heisenberg_pair",
    "sl2_generators",
    "explicit_difference_generators",
    "verify_relations",
    "annihilator_word",
    "annihilator_check",
    "delta_reflection_check",
]


def jplus_word(n: int) -> OpExpr:
    return B * B * A - Scalar(n) * B


def jzero_word(n: int) -> OpExpr:
    return B * A - Scalar(Fraction(n, 2))


def jminus_word(n: int = 0) -> OpExpr:
    return A


@dataclass(frozen=True)
class Sl2Triple:
    jplus: Operator
    jzero: Operator
    jminus: Operator
    n: int
    rep: HeisenbergRep

    def operators(self) -> tuple[Operator, Operator, Operator]:
        return self.jplus, self.jzero, self.jminus

    def same_operators(self, other: "Sl2Triple") -> bool:
        return self.operators() == other.operators()


def heisenberg_pair(rep: HeisenbergRep) -> tuple[Operator, Operator]:
    return rep.pair()


def sl2_generators(n: int, rep: HeisenbergRep) -> Sl2Triple:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Sl2Triple(
        realize(jplus_word(n), rep),
        realize(jzero_word(n), rep),
        realize(jminus_word(n), rep),
        n,
        rep,
    )


def explicit_difference_generators(delta) -> Sl2Triple:
    """The finite-difference triple written directly in shifts E = e^(delta d/dx).

    J+ = x(x/delta - 1) E^-1 (1 - E^-1), J0 = (x/delta)(1 - E^-1),
    J- = (E - 1)/delta.
    """
    d = rat(delta)
    if d == 0:
        raise ValueError("delta must be nonzero")
    x = Poly.x()
    jp_coeff = Poly([0, -1, 1 / d])  # x(x/delta - 1)
    jplus = ShiftOp(d, {-1: jp_coeff, -2: -jp_coeff})
    jzero = ShiftOp(d, {0: x.scale(1 / d), -1: x.scale(-1 / d)})
    jminus = ShiftOp(d, {1: Poly.const(1 / d), 0: Poly.const(-1 / d)})
    return Sl2Triple(jplus, jzero, jminus, 0, HeisenbergRep.difference(d))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        out = {"name": self.name, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class RelationReport:
    n: int
    rep: HeisenbergRep
    dmax: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "checks": [c.to_json() for c in self.checks],
            "n": self.n,
            "rep": self.rep.kind,
            "delta": rat_str(self.rep.delta) if self.rep.is_difference else None,
            "deg": self.dmax,
            "pass": self.passed,
        }


def _agree_on_monomials(lhs: Operator, rhs: Operator, dmax: int) -> tuple[bool, str]:
    for k in range(dmax + 1):
        e = Poly.monomial(k)
        if lhs(e) != rhs(e):
            return False, f"differs on x^{k}"
    return True, ""


def verify_relations(
    n: int, rep: HeisenbergRep, dmax: int, triple: Sl2Triple | None = None
) -> RelationReport:
    """Check the Heisenberg and sl2 commutation relations on x^0..x^dmax.

    ``triple`` overrides the generators (used for negative controls).
    """
    if dmax < n + 3:
        raise ValueError("dmax must be at least n + 3")
    a, b = heisenberg_pair(rep)
    t = triple if triple is not None else sl2_generators(n, rep)
    jp, j0, jm = t.operators()
    one = rep.scalar(1)
    report = RelationReport(n, rep, dmax)
    for name, lhs, rhs in (
        ("heisenberg", commutator(a, b), one),
        ("j0_jplus", commutator(j0, jp), jp),
        ("j0_jminus", commutator(j0, jm), -jm),
        ("jplus_jminus", commutator(jp, jm), j0.scale(-2)),
    ):
        ok, detail = _agree_on_monomials(lhs, rhs, dmax)
        report.checks.append(Check(name, ok, detail))
    return report


def delta_reflection_check(delta) -> bool:
    """D+ with step -delta is D- with step delta (as normalized shift operators).

    The two operators use opposite step units, so compare them through the
    common unit ``delta``: a shift by -1 step of size -delta is a shift by
    +1 step of size delta.
    """
    d = rat(delta)
    dplus_neg = ShiftOp.forward_difference(-d)
    reexpressed = ShiftOp(d, [(-s, p) for s, p in dplus_neg.terms])
    return reexpressed == ShiftOp.backward_difference(d)


def annihilator_word(B_coeffs: Sequence, n: int) -> OpExpr:
    """``B(b) a^(n+1)`` with ``B(b) = sum_k B_coeffs[k] b^k``."""
    Bb = Scalar(0)
    for k, c in enumerate(B_coeffs):
        Bb = Bb + Scalar(rat(c)) * (B ** k)
    return Bb * (A ** (n + 1))


def annihilator_check(B_coeffs: Sequence, n: int, rep: HeisenbergRep, dmax: int | None = None) -> bool:
    """True iff ``B(b) a^(n+1)`` kills every polynomial of degree <= n.

    Checked on the rep's natural basis of that space.
    """
    dmax = n if dmax is None else dmax
    if dmax < n:
        raise ValueError("dmax must be at least n")
    L = realize(annihilator_word(B_coeffs, n), rep)
    basis = natural_basis(rep)
    for k in range(n + 1):
        e = Poly.monomial(k) if basis == MONOMIAL else falling_factorial(k, basis.delta)
        if not L(e).is_zero():
            return False
    return True
