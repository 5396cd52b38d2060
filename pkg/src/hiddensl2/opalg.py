"""Normal forms for finite-difference and differential operators on Q[x].

Two concrete operator algebras live here:

* :class:`ShiftOp` -- ``sum_s p_s(x) E^s`` with ``(E^s f)(x) = f(x + s*delta)``.
* :class:`DiffOp`  -- ``sum_j q_j(x) (d/dx)^j``.

Both are immutable, support ``+``, ``-``, scalar multiplication and
composition via ``*`` (``X * Y`` means "apply Y first"), and compare
structurally. :class:`OpExpr` is a representation-free word in the abstract
generators ``a`` and ``b``; :func:`realize` substitutes one of the two
Heisenberg realizations and normalizes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

from .exactpoly import (
    MONOMIAL,
    Basis,
    Poly,
    change_basis,
    falling_factorial,
    poly_mul,
    poly_shift,
    poly_sum,
    rat,
    rat_str,
)

__all__ = [
    "ShiftOp",
    "DiffOp",
    "HeisenbergRep",
    "DIFFERENTIAL",
    "OpExpr",
    "GenA",
    "GenB",
    "Scalar",
    "Sum",
    "Product",
    "A",
    "B",
    "MatrixQ",
    "ImageEscapesTruncation",
    "OperatorMismatch",
    "shift_apply",
    "shift_compose",
    "diff_apply",
    "diff_compose",
    "commutator",
    "realize",
    "matrix_in_basis",
    "natural_basis",
    "shift_support",
]


class OperatorMismatch(ValueError):
    """Operands are of different kinds or carry different steps."""


class ImageEscapesTruncation(ValueError):
    def __init__(self, column: int, needed_degree: int):
        super().__init__(f"image of basis element {column} needs degree {needed_degree}")
        self.column = column
        self.needed_degree = needed_degree


def _as_poly(c) -> Poly:
    if isinstance(c, Poly):
        return c if c.basis.is_monomial else change_basis(c, MONOMIAL)
    return Poly.const(rat(c))


# --------------------------------------------------------------------------
# Shift operators
# --------------------------------------------------------------------------


class ShiftOp:
    """``sum_s p_s(x) E^s`` on polynomials, step ``delta``."""

    __slots__ = ("delta", "terms")

    def __init__(self, delta, terms: Mapping[int, Poly] | Iterable = ()):
        d = rat(delta)
        if d == 0:
            raise ValueError("delta must be nonzero")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Poly] = {}
        for s, p in items:
            p = _as_poly(p)
            acc[int(s)] = acc[int(s)] + p if int(s) in acc else p
        object.__setattr__(self, "delta", d)
        object.__setattr__(
            self, "terms", tuple(sorted((s, p) for s, p in acc.items() if not p.is_zero()))
        )

    def __setattr__(self, name, value):
        raise AttributeError("ShiftOp is immutable")

    @classmethod
    def identity(cls, delta) -> "ShiftOp":
        return cls(delta, {0: Poly.const(1)})

    @classmethod
    def scalar(cls, delta, c) -> "ShiftOp":
        return cls(delta, {0: Poly.const(rat(c))})

    @classmethod
    def zero(cls, delta) -> "ShiftOp":
        return cls(delta, {})

    @classmethod
    def shift(cls, delta, s: int = 1, coeff=1) -> "ShiftOp":
        return cls(delta, {s: _as_poly(coeff)})

    @classmethod
    def mul_x(cls, delta) -> "ShiftOp":
        return cls(delta, {0: Poly.x()})

    @classmethod
    def forward_difference(cls, delta) -> "ShiftOp":
        """D+ f = (f(x + delta) - f(x)) / delta."""
        d = rat(delta)
        return cls(d, {1: Poly.const(1 / d), 0: Poly.const(-1 / d)})

    @classmethod
    def backward_difference(cls, delta) -> "ShiftOp":
        """D- f = (f(x) - f(x - delta)) / delta."""
        d = rat(delta)
        return cls(d, {0: Poly.const(1 / d), -1: Poly.const(-1 / d)})

    def coeff(self, s: int) -> Poly:
        for t, p in self.terms:
            if t == s:
                return p
        return Poly.zero()

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ShiftOp):
            return NotImplemented
        return self.delta == other.delta and self.terms == other.terms

    def __hash__(self):
        return hash((self.delta, self.terms))

    def __repr__(self):
        inner = ", ".join(f"{s}: {p}" for s, p in self.terms)
        return f"ShiftOp(delta={rat_str(self.delta)}, {{{inner}}})"

    def _same(self, other: "ShiftOp"):
        if not isinstance(other, ShiftOp):
            raise OperatorMismatch(f"cannot combine ShiftOp with {type(other).__name__}")
        if other.delta != self.delta:
            raise OperatorMismatch(f"delta mismatch: {self.delta} vs {other.delta}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ShiftOp.scalar(self.delta, other)
        self._same(other)
        return ShiftOp(self.delta, list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return ShiftOp(self.delta, [(s, -p) for s, p in self.terms])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ShiftOp.scalar(self.delta, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ShiftOp":
        c = rat(c)
        return ShiftOp(self.delta, [(s, p.scale(c)) for s, p in self.terms])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return shift_compose(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __call__(self, p: Poly) -> Poly:
        return shift_apply(self, p)

    def to_json(self) -> dict:
        return {
            "delta": rat_str(self.delta),
            "terms": [
                {"shift": s, "coeff": [rat_str(c) for c in p.coeffs]} for s, p in self.terms
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftOp":
        return cls(
            rat(obj["delta"]),
            [(t["shift"], Poly(rat(c) for c in t["coeff"])) for t in obj["terms"]],
        )


def shift_apply(L: ShiftOp, p: Poly) -> Poly:
    if not p.basis.is_monomial:
        p = change_basis(p, MONOMIAL)
    return poly_sum(poly_mul(coeff, poly_shift(p, s * L.delta)) for s, coeff in L.terms)


def shift_compose(L1: ShiftOp, L2: ShiftOp) -> ShiftOp:
    """Normal form of ``L1 o L2`` using ``(p E^a)(q E^b) = p(x) q(x + a delta) E^(a+b)``."""
    L1._same(L2)
    d = L1.delta
    terms = []
    for a, p in L1.terms:
        for b, q in L2.terms:
            terms.append((a + b, poly_mul(p, poly_shift(q, a * d))))
    return ShiftOp(d, terms)


def shift_support(L: ShiftOp) -> frozenset[int]:
    return frozenset(s for s, _ in L.terms)


# --------------------------------------------------------------------------
# Differential operators
# --------------------------------------------------------------------------


class DiffOp:
    """``sum_j q_j(x) (d/dx)^j``; ``coeffs[j]`` multiplies the j-th derivative."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_poly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls([1])

    @classmethod
    def scalar(cls, c) -> "DiffOp":
        return cls([rat(c)])

    @classmethod
    def zero(cls) -> "DiffOp":
        return cls([])

    @classmethod
    def d(cls, order: int = 1) -> "DiffOp":
        return cls([0] * order + [1])

    @classmethod
    def mul_x(cls) -> "DiffOp":
        return cls([Poly.x()])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> Poly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Poly.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        inner = ", ".join(f"d^{j}: {q}" for j, q in enumerate(self.coeffs) if not q.is_zero())
        return f"DiffOp({inner})"

    def _same(self, other):
        if not isinstance(other, DiffOp):
            raise OperatorMismatch(f"cannot combine DiffOp with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffOp.scalar(other)
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(self.coeff(j) + other.coeff(j) for j in range(n))

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(-q for q in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffOp.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiffOp":
        c = rat(c)
        return DiffOp(q.scale(c) for q in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return diff_compose(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __call__(self, p: Poly) -> Poly:
        return diff_apply(self, p)

    def to_json(self) -> dict:
        return {"coeffs": [[rat_str(c) for c in q.coeffs] for q in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "DiffOp":
        return cls(Poly(rat(c) for c in q) for q in obj["coeffs"])


def diff_apply(D: DiffOp, p: Poly) -> Poly:
    if not p.basis.is_monomial:
        p = change_basis(p, MONOMIAL)
    return poly_sum(
        poly_mul(q, p.derivative(j))
        for j, q in enumerate(D.coeffs[: p.degree + 1])
        if not q.is_zero()
    )


def diff_compose(D1: DiffOp, D2: DiffOp) -> DiffOp:
    """Leibniz: ``(q d^i)(r d^j) = sum_m C(i,m) q r^(m) d^(i+j-m)``."""
    from math import comb

    D1._same(D2)
    if D1.is_zero() or D2.is_zero():
        return DiffOp.zero()
    acc = [Poly.zero() for _ in range(D1.order + D2.order + 1)]
    for i, q in enumerate(D1.coeffs):
        if q.is_zero():
            continue
        for j, r in enumerate(D2.coeffs):
            if r.is_zero():
                continue
            for m in range(min(i, r.degree) + 1):
                acc[i + j - m] = acc[i + j - m] + poly_mul(q, r.derivative(m)).scale(comb(i, m))
    return DiffOp(acc)


Operator = Union[ShiftOp, DiffOp]


def commutator(X: Operator, Y: Operator) -> Operator:
    """``XY - YX`` in normal form."""
    if type(X) is not type(Y):
        raise OperatorMismatch(f"{type(X).__name__} vs {type(Y).__name__}")
    return X * Y - Y * X


# --------------------------------------------------------------------------
# Heisenberg representations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HeisenbergRep:
    """Which concrete pair realizes ``[a, b] = 1``.

    ``differential``: a = d/dx, b = x. ``difference``: a = D+,
    b = x(1 - delta D-) = x E^-1, with nonzero step ``delta``.
    """

    kind: str = "differential"
    delta: Fraction | None = None

    def __post_init__(self):
        if self.kind == "differential":
            if self.delta is not None:
                raise ValueError("differential representation takes no delta")
        elif self.kind == "difference":
            if self.delta is None:
                raise ValueError("difference representation needs delta")
            d = rat(self.delta)
            if d == 0:
                raise ValueError("delta must be nonzero")
            object.__setattr__(self, "delta", d)
        else:
            raise ValueError(f"unknown representation {self.kind!r}")

    @classmethod
    def difference(cls, delta) -> "HeisenbergRep":
        return cls("difference", rat(delta))

    @property
    def is_difference(self) -> bool:
        return self.kind == "difference"

    def pair(self) -> tuple[Operator, Operator]:
        if not self.is_difference:
            return DiffOp.d(1), DiffOp.mul_x()
        d = self.delta
        a = ShiftOp.forward_difference(d)
        b = shift_compose(ShiftOp.mul_x(d), ShiftOp.identity(d) - ShiftOp.backward_difference(d).scale(d))
        return a, b

    def scalar(self, c) -> Operator:
        if self.is_difference:
            return ShiftOp.scalar(self.delta, c)
        return DiffOp.scalar(c)

    def to_json(self):
        if self.is_difference:
            return {"rep": "difference", "delta": rat_str(self.delta)}
        return {"rep": "differential", "delta": None}

    def __str__(self):
        return f"difference(delta={rat_str(self.delta)})" if self.is_difference else "differential"


DIFFERENTIAL = HeisenbergRep()


def natural_basis(rep: HeisenbergRep) -> Basis:
    """Basis ``b^k |0>``: monomials, or step-delta falling factorials."""
    return Basis.falling(rep.delta) if rep.is_difference else MONOMIAL


# --------------------------------------------------------------------------
# Abstract words in a, b
# --------------------------------------------------------------------------


class OpExpr:
    """Expression tree over the generators ``a``, ``b`` and rational scalars.

    Products keep their factor order; nothing is normal-ordered until
    :func:`realize`.
    """

    def __add__(self, other):
        return Sum((self, _expr(other)))

    def __radd__(self, other):
        return Sum((_expr(other), self))

    def __sub__(self, other):
        return Sum((self, Product((Scalar(-1), _expr(other)))))

    def __rsub__(self, other):
        return Sum((_expr(other), Product((Scalar(-1), self))))

    def __neg__(self):
        return Product((Scalar(-1), self))

    def __mul__(self, other):
        return Product((self, _expr(other)))

    def __rmul__(self, other):
        return Product((_expr(other), self))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return Scalar(1)
        return Product(tuple([self] * k))

    def length(self) -> int:
        """Number of generator leaves."""
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class _Gen(OpExpr):
    name: str

    def length(self):
        return 1

    def __repr__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class Scalar(OpExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", rat(self.value))

    def length(self):
        return 0

    def __repr__(self):
        return rat_str(self.value)


@dataclass(frozen=True, eq=True)
class Sum(OpExpr):
    terms: tuple

    def length(self):
        return max((t.length() for t in self.terms), default=0)

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.terms)) + ")"


@dataclass(frozen=True, eq=True)
class Product(OpExpr):
    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            else:
                flat.append(f)
        object.__setattr__(self, "factors", tuple(flat))

    def length(self):
        return sum(f.length() for f in self.factors)

    def __repr__(self):
        return "*".join(map(repr, self.factors))


GenA = _Gen("a")
GenB = _Gen("b")
A = GenA
B = GenB


def _expr(x) -> OpExpr:
    if isinstance(x, OpExpr):
        return x
    return Scalar(rat(x))


def realize(expr: OpExpr, rep: HeisenbergRep) -> Operator:
    """Substitute the representation's ``(a, b)`` into ``expr`` and normalize."""
    a, b = rep.pair()
    cache: dict = {}

    def go(e: OpExpr):
        key = id(e)
        if key in cache:
            return cache[key][1]
        if e is GenA or (isinstance(e, _Gen) and e.name == "a"):
            out = a
        elif isinstance(e, _Gen):
            out = b
        elif isinstance(e, Scalar):
            out = rep.scalar(e.value)
        elif isinstance(e, Sum):
            out = reduce(lambda x, y: x + y, (go(t) for t in e.terms), rep.scalar(0))
        elif isinstance(e, Product):
            out = reduce(lambda x, y: x * y, (go(f) for f in e.factors), rep.scalar(1))
        else:
            raise TypeError(f"not an operator expression: {e!r}")
        cache[key] = (e, out)
        return out

    return go(expr)


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------


class MatrixQ:
    """Dense exact matrix; ``rows[i][j]`` is the coefficient of basis element
    ``i`` in the image of basis element ``j``."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(rat(v) for v in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixQ is immutable")

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "MatrixQ":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def dim(self) -> int:
        n, m = self.shape
        if n != m:
            raise ValueError(f"matrix is not square: {self.shape}")
        return n

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def diagonal(self) -> list[Fraction]:
        n = min(self.shape)
        return [self.rows[i][i] for i in range(n)]

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(len(self.rows)) for j in range(min(i, self.shape[1])))

    def __eq__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return MatrixQ([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return MatrixQ([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "MatrixQ":
        c = rat(c)
        return MatrixQ([[c * x for x in r] for r in self.rows])

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return MatrixQ(
            [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.rows]
        )

    def __repr__(self):
        return "MatrixQ(" + repr([[rat_str(v) for v in r] for r in self.rows]) + ")"

    def to_json(self) -> list:
        return [[rat_str(v) for v in r] for r in self.rows]


def _basis_element(basis: Basis, j: int) -> Poly:
    if basis.is_monomial:
        return Poly.monomial(j)
    return falling_factorial(j, basis.delta)


def matrix_in_basis(L: Operator, basis: Basis, dmax: int, cols: int | None = None) -> MatrixQ:
    """Matrix of ``L`` on span(e_0..e_dmax).

    ``cols`` (default ``dmax + 1``) selects how many basis elements are
    mapped; passing ``cols < dmax + 1`` gives a tall block for operators
    that raise degree. Any image reaching above degree ``dmax`` raises
    :class:`ImageEscapesTruncation` instead of being cut off.
    """
    ncols = dmax + 1 if cols is None else cols
    columns = []
    for j in range(ncols):
        image = L(_basis_element(basis, j))
        if image.degree > dmax:
            raise ImageEscapesTruncation(j, image.degree)
        coords = change_basis(image, basis)
        columns.append([coords[i] for i in range(dmax + 1)])
    return MatrixQ([[columns[j][i] for j in range(ncols)] for i in range(dmax + 1)])
