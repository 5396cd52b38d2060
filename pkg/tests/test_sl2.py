from fractions import Fraction

import pytest
import sympy as sp

from conftest import TEST_DELTAS
from hiddensl2.exactpoly import MONOMIAL, Basis, Poly, falling_factorial
from hiddensl2.opalg import DIFFERENTIAL, A, B, DiffOp, HeisenbergRep, matrix_in_basis, realize
from hiddensl2.sl2 import (
    Sl2Triple,
    annihilator_check,
    explicit_difference_generators,
    heisenberg_pair,
    sl2_generators,
    verify_relations,
)

F = Fraction
x = sp.Symbol("x")

REPS = [DIFFERENTIAL] + [HeisenbergRep.difference(d) for d in TEST_DELTAS]


def sympy_pair(rep):
    """a, b as sympy callables, written straight from their definitions."""
    if not rep.is_difference:
        return (lambda f: sp.diff(f, x)), (lambda f: sp.expand(x * f))
    d = sp.Rational(rep.delta.numerator, rep.delta.denominator)
    a = lambda f: sp.expand((f.subs(x, x + d) - f) / d)
    dminus = lambda f: (f - f.subs(x, x - d)) / d
    b = lambda f: sp.expand(x * (f - d * dminus(f)))
    return a, b


def sympy_generators(n, rep):
    a, b = sympy_pair(rep)
    jp = lambda f: sp.expand(b(b(a(f))) - n * b(f))
    j0 = lambda f: sp.expand(b(a(f)) - sp.Rational(n, 2) * f)
    jm = a
    return jp, j0, jm


def to_sympy(p: Poly):
    return sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))


@pytest.mark.parametrize("rep", REPS, ids=str)
@pytest.mark.parametrize("n", [0, 1, 3])
def test_sympy_oracle_relations_and_agreement(rep, n):
    jp, j0, jm = sympy_generators(n, rep)
    t = sl2_generators(n, rep)
    for k in range(8):
        f = x**k
        assert sp.expand(j0(jp(f)) - jp(j0(f)) - jp(f)) == 0
        assert sp.expand(j0(jm(f)) - jm(j0(f)) + jm(f)) == 0
        assert sp.expand(jp(jm(f)) - jm(jp(f)) + 2 * j0(f)) == 0
        e = Poly.monomial(k)
        assert to_sympy(t.jplus(e)) == jp(f)
        assert to_sympy(t.jzero(e)) == j0(f)
        assert to_sympy(t.jminus(e)) == jm(f)


def test_heisenberg_pair_differential():
    a, b = heisenberg_pair(DIFFERENTIAL)
    assert a == DiffOp.d() and b == DiffOp.mul_x()


def test_heisenberg_pair_difference_vacuum():
    a, b = heisenberg_pair(HeisenbergRep.difference(1))
    one = Poly([1])
    assert b(one) == Poly.x()
    assert b(b(one)) == Poly([0, -1, 1])
    assert a(one).is_zero()


@pytest.mark.parametrize("delta", TEST_DELTAS)
def test_b_powers_give_falling_factorials(delta):
    _, b = heisenberg_pair(HeisenbergRep.difference(delta))
    p = Poly([1])
    for k in range(10):
        assert p == falling_factorial(k, delta)
        p = b(p)


def test_j0_diagonal_differential():
    t = sl2_generators(0, DIFFERENTIAL)
    assert t.jzero == DiffOp([0, Poly.x()])
    assert matrix_in_basis(t.jzero, MONOMIAL, 5).diagonal() == list(range(6))


def test_j0_diagonal_difference():
    t = sl2_generators(0, HeisenbergRep.difference(1))
    assert matrix_in_basis(t.jzero, MONOMIAL, 2).diagonal() == [0, 1, 2]


def test_jplus_kills_top_differential():
    t = sl2_generators(2, DIFFERENTIAL)
    assert t.jplus(Poly.monomial(2)).is_zero()


@pytest.mark.parametrize("delta", TEST_DELTAS)
def test_explicit_triple_matches_word(delta):
    rep = HeisenbergRep.difference(delta)
    explicit = explicit_difference_generators(delta)
    assert explicit.same_operators(sl2_generators(0, rep))
    assert explicit.jminus.terms and {s for s, _ in explicit.jminus.terms} == {0, 1}
    assert {s for s, _ in explicit.jzero.terms} == {-1, 0}
    assert {s for s, _ in explicit.jplus.terms} == {-2, -1}
    assert explicit.jzero(Poly([3])).is_zero()


@pytest.mark.parametrize("n, rep", [(0, DIFFERENTIAL), (3, HeisenbergRep.difference(F(-2, 3)))])
def test_verify_relations_examples(n, rep):
    report = verify_relations(n, rep, 20)
    assert report.passed
    assert [c.name for c in report.checks] == ["heisenberg", "j0_jplus", "j0_jminus", "jplus_jminus"]


@pytest.mark.parametrize("rep", [DIFFERENTIAL, HeisenbergRep.difference(1)], ids=str)
def test_verify_relations_negative_control(rep):
    good = sl2_generators(1, rep)
    bad = Sl2Triple(realize(B * B * A, rep), good.jzero, good.jminus, 1, rep)
    report = verify_relations(1, rep, 10, triple=bad)
    by_name = {c.name: c.passed for c in report.checks}
    assert by_name["heisenberg"]
    assert not by_name["jplus_jminus"]


def test_verify_relations_requires_headroom():
    with pytest.raises(ValueError):
        verify_relations(3, DIFFERENTIAL, 5)


def test_report_json():
    obj = verify_relations(1, HeisenbergRep.difference(F(1, 2)), 6).to_json()
    assert obj["rep"] == "difference" and obj["delta"] == "1/2" and obj["n"] == 1
    assert obj["checks"][0] == {"name": "heisenberg", "pass": True}


@pytest.mark.parametrize("rep", REPS, ids=str)
@pytest.mark.parametrize("n", range(7))
def test_highest_weight(rep, n):
    jp = sl2_generators(n, rep).jplus
    basis = Basis.falling(rep.delta) if rep.is_difference else MONOMIAL
    elem = (lambda k: falling_factorial(k, basis.delta)) if rep.is_difference else Poly.monomial
    assert jp(elem(n)).is_zero()
    for k in range(n):
        assert jp(elem(k)).degree == k + 1


@pytest.mark.parametrize("rep", REPS, ids=str)
def test_generators_preserve_degree_n_space(rep):
    for n in range(5):
        for L in sl2_generators(n, rep).operators():
            M = matrix_in_basis(L, MONOMIAL, n)
            assert M.shape == (n + 1, n + 1)


def test_annihilator_examples():
    assert annihilator_check([1], 1, DIFFERENTIAL)
    assert annihilator_check([1, 1], 2, HeisenbergRep.difference(1))
    # the claim is about degree <= n only: a alone does not kill x
    assert annihilator_check([1], 0, DIFFERENTIAL, dmax=0)
    assert not realize(A, DIFFERENTIAL)(Poly.x()).is_zero()


@pytest.mark.parametrize("rep", REPS, ids=str)
def test_annihilator_random_B(rep, rng):
    for n in range(5):
        coeffs = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        assert annihilator_check(coeffs, n, rep)
