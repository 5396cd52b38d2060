"""Exact rational polynomials, falling-factorial bases and the umbral map.

Scalars are :class:`fractions.Fraction` throughout (always reduced, exact).
A :class:`Poly` stores dense coefficients lowest degree first together with a
:class:`Basis` tag saying how those coefficients are to be read: either as
monomial coefficients or as coefficients of the falling factorials
``x^(k) = x (x - d) (x - 2d) ... (x - (k-1) d)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]

__all__ = [
    "Rat",
    "Basis",
    "MONOMIAL",
    "Poly",
    "BasisMismatch",
    "rat",
    "rat_str",
    "poly_shift",
    "poly_mul",
    "poly_divrem",
    "falling_factorial",
    "change_basis",
    "umbral_map",
    "poly_to_json",
    "poly_from_json",
]


class BasisMismatch(ValueError):
    pass


def rat(value: RatLike) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into an exact rational.

    Floats are rejected: they would silently smuggle binary rounding into
    exact computations.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE_ "):
            raise ValueError(f"malformed rational {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(q: Fraction) -> str:
    """Canonical ``"p/q"`` form, with ``q`` omitted when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Basis:
    """Either the monomial basis or the step-``delta`` falling-factorial basis."""

    kind: str = "monomial"
    delta: Fraction | None = None

    def __post_init__(self):
        if self.kind == "monomial":
            if self.delta is not None:
                raise ValueError("monomial basis takes no delta")
        elif self.kind == "falling":
            if self.delta is None:
                raise ValueError("falling basis needs a delta")
            d = rat(self.delta)
            if d == 0:
                raise ValueError("delta must be nonzero")
            object.__setattr__(self, "delta", d)
        else:
            raise ValueError(f"unknown basis kind {self.kind!r}")

    @classmethod
    def falling(cls, delta: RatLike) -> "Basis":
        return cls("falling", rat(delta))

    @property
    def is_monomial(self) -> bool:
        return self.kind == "monomial"

    def to_json(self) -> dict:
        if self.is_monomial:
            return {"basis": "monomial"}
        return {"basis": "falling", "delta": rat_str(self.delta)}

    def __str__(self):
        return "monomial" if self.is_monomial else f"falling(delta={rat_str(self.delta)})"


MONOMIAL = Basis()


def _trim(coeffs: Iterable) -> tuple:
    out = [rat(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Immutable dense univariate polynomial over Q.

    ``Poly([c0, c1, c2])`` is ``c0 + c1 x + c2 x^2`` in the monomial basis;
    pass ``basis=Basis.falling(d)`` to read the same list as coefficients of
    falling factorials instead. Arithmetic that mixes bases raises
    :class:`BasisMismatch`; multiplication and evaluation of derivatives are
    monomial-only.
    """

    __slots__ = ("coeffs", "basis", "_hash")

    def __init__(self, coeffs: Iterable[RatLike] = (), basis: Basis = MONOMIAL):
        object.__setattr__(self, "coeffs", _trim(coeffs))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def zero(cls, basis: Basis = MONOMIAL) -> "Poly":
        return cls((), basis)

    @classmethod
    def const(cls, c: RatLike, basis: Basis = MONOMIAL) -> "Poly":
        return cls((rat(c),), basis)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: RatLike = 1) -> "Poly":
        return cls([0] * k + [rat(c)])

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self.coeffs == _trim((other,))
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.coeffs == other.coeffs and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            h = hash(("zero",)) if not self.coeffs else hash((self.coeffs, self.basis))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        body = ", ".join(rat_str(c) for c in self.coeffs)
        if self.basis.is_monomial:
            return f"Poly([{body}])"
        return f"Poly([{body}], {self.basis})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        var = "x" if self.basis.is_monomial else "x^({k})"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if self.basis.is_monomial:
                term = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            else:
                term = "" if k == 0 else var.format(k=k)
            if term and abs(c) == 1:
                s = term
            elif term:
                s = f"{rat_str(abs(c))}*{term}"
            else:
                s = rat_str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, s))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    # arithmetic
    def _check(self, other: "Poly") -> Basis:
        if self.is_zero():
            return other.basis
        if other.is_zero() or self.basis == other.basis:
            return self.basis
        raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.basis)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        basis = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly((self[k] + other[k] for k in range(n)), basis)

    __radd__ = __add__

    def __neg__(self):
        return Poly((-c for c in self.coeffs), self.basis)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RatLike) -> "Poly":
        c = rat(c)
        return Poly((c * a for a in self.coeffs), self.basis)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __call__(self, x: RatLike) -> Fraction:
        """Exact evaluation at a rational point (either basis)."""
        x = Fraction(x) if not isinstance(x, Fraction) else x
        if self.basis.is_monomial:
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        d = self.basis.delta
        acc = Fraction(0)
        for k in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * (x - k * d) + self.coeffs[k]
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        _require_monomial(self)
        c = self.coeffs
        if order == 0:
            return self
        return Poly(
            c[k] * _falling_int(k, order) for k in range(order, len(c))
        )

    def evaluate_float(self, x: complex) -> complex:
        _require_monomial(self)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


def _falling_int(k: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= k - i
    return out


def _require_monomial(p: Poly):
    if not p.basis.is_monomial:
        raise BasisMismatch(f"operation needs monomial basis, got {p.basis}")


def _scaled(p: Poly) -> tuple[list[int], int]:
    """Integer numerators over a common denominator: p = nums / den."""
    den = lcm(*(c.denominator for c in p.coeffs)) if p.coeffs else 1
    return [c.numerator * (den // c.denominator) for c in p.coeffs], den


def poly_shift(p: Poly, c: RatLike) -> Poly:
    """Return q with q(x) = p(x + c), by binomial expansion."""
    _require_monomial(p)
    c = rat(c)
    if c == 0 or p.degree <= 0:
        return p
    # integer arithmetic throughout; c = u/v, scale row k by v^(n-1)
    nums, den = _scaled(p)
    u, v = c.numerator, c.denominator
    n = len(nums)
    upow = [u**j for j in range(n)]
    vpow = [v**j for j in range(n)]
    out = [0] * n
    for k, a in enumerate(nums):
        if a == 0:
            continue
        for i in range(k + 1):
            out[i] += a * comb(k, i) * upow[k - i] * vpow[n - 1 - k + i]
    scale = den * vpow[n - 1]
    return Poly(Fraction(x, scale) for x in out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    _require_monomial(p)
    _require_monomial(q)
    if p.is_zero() or q.is_zero():
        return Poly.zero()
    pn, pd = _scaled(p)
    qn, qd = _scaled(q)
    out = [0] * (len(pn) + len(qn) - 1)
    for i, a in enumerate(pn):
        if a == 0:
            continue
        for j, b in enumerate(qn):
            out[i + j] += a * b
    scale = pd * qd
    return Poly(Fraction(x, scale) for x in out)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    """Sum of monomial-basis polynomials, accumulated over a common denominator."""
    parts = [_scaled(q) for q in polys if not q.is_zero()]
    if not parts:
        return Poly.zero()
    den = lcm(*(d for _, d in parts))
    out = [0] * max(len(n) for n, _ in parts)
    for nums, d in parts:
        f = den // d
        for i, a in enumerate(nums):
            out[i] += a * f
    return Poly(Fraction(x, den) for x in out)


def poly_divrem(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``p = d * quotient + remainder``."""
    _require_monomial(p)
    _require_monomial(d)
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dd = d.degree
    lead = d.leading
    if p.degree < dd:
        return Poly.zero(), p
    quot = [Fraction(0)] * (p.degree - dd + 1)
    for k in range(p.degree - dd, -1, -1):
        c = rem[k + dd] / lead
        quot[k] = c
        if c:
            for i, b in enumerate(d.coeffs):
                rem[k + i] -= c * b
    return Poly(quot), Poly(rem[:dd])


def falling_factorial(k: int, delta: RatLike) -> Poly:
    """Monomial expansion of ``x (x - delta) ... (x - (k-1) delta)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    delta = rat(delta)
    coeffs = [Fraction(1)]
    for j in range(k):
        # multiply by (x - j*delta)
        root = j * delta
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i + 1] += a
            nxt[i] -= root * a
        coeffs = nxt
    return Poly(coeffs)


def _to_monomial(p: Poly) -> Poly:
    if p.basis.is_monomial:
        return p
    d = p.basis.delta
    # nested (Newton/Horner) form with nodes 0, d, 2d, ...
    acc = [Fraction(0)]
    for k in range(len(p.coeffs) - 1, -1, -1):
        root = k * d
        nxt = [Fraction(0)] * (len(acc) + 1)
        for i, a in enumerate(acc):
            nxt[i + 1] += a
            nxt[i] -= root * a
        nxt[0] += p.coeffs[k]
        acc = nxt
    return Poly(acc)


def _from_monomial(p: Poly, target: Basis) -> Poly:
    if target.is_monomial:
        return p
    d = target.delta
    rem = list(p.coeffs)
    out = []
    k = 0
    while rem:
        # synthetic division of the running quotient by (x - k d)
        root = k * d
        n = len(rem)
        quot = [Fraction(0)] * (n - 1)
        carry = Fraction(0)
        for i in range(n - 1, 0, -1):
            carry = rem[i] + root * carry
            quot[i - 1] = carry
        value = rem[0] + root * carry
        out.append(value)
        rem = quot
        k += 1
    return Poly(out, target)


def change_basis(p: Poly, target: Basis) -> Poly:
    """Re-express ``p`` in ``target`` (monomial or falling with any step)."""
    if p.basis == target:
        return p
    if p.is_zero():
        return Poly.zero(target)
    return _from_monomial(_to_monomial(p), target)


def umbral_map(p: Poly, delta: RatLike) -> Poly:
    """Send ``sum a_k x^k`` to ``sum a_k x^(k)`` and expand back into monomials."""
    _require_monomial(p)
    return _to_monomial(Poly(p.coeffs, Basis.falling(delta)))


def poly_to_json(p: Poly) -> dict:
    out = {"coeffs": [rat_str(c) for c in p.coeffs]}
    out.update(p.basis.to_json())
    return out


def poly_from_json(obj: dict) -> Poly:
    kind = obj.get("basis", "monomial")
    if kind == "monomial":
        basis = MONOMIAL
    elif kind == "falling":
        basis = Basis.falling(obj["delta"])
    else:
        raise ValueError(f"unknown basis {kind!r}")
    return Poly((rat(c) for c in obj["coeffs"]), basis)


def coeff_strings(p: Poly) -> list[str]:
    return [rat_str(c) for c in p.coeffs]


def rats(values: Sequence[RatLike]) -> list[Fraction]:
    return [rat(v) for v in values]
