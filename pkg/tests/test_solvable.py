from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import TEST_DELTAS, nondegenerate, random_params, rationals
from test_exactpoly import stirling1_signed, stirling2
from hiddensl2.exactpoly import MONOMIAL, Basis, Poly, umbral_map
from hiddensl2.opalg import (
    DIFFERENTIAL,
    A,
    B,
    DiffOp,
    HeisenbergRep,
    MatrixQ,
    Scalar,
    matrix_in_basis,
    realize,
    shift_support,
)
from hiddensl2.sl2 import jminus_word, jplus_word, jzero_word
from hiddensl2.solvable import (
    DegenerateSpectrum,
    SolvableParams,
    build_operator,
    differential_operator,
    eigenpolys,
    explicit_three_point,
    fock_matrix_invariance,
    isospectral_check,
    solvable_word,
    spectrum,
    three_point_coefficients,
    umbral_transfer_check,
)

F = Fraction
HAHN_003 = SolvableParams(-1, 1, -1, 2, 0, 1)
CHARLIER_2 = SolvableParams(0, 0, -1, 2, 0, 1)

params_st = st.builds(
    SolvableParams, rationals(), rationals(), rationals(), rationals(), rationals(),
    rationals(6, 4, nonzero=True),
)


def three_point_residual(params, f: Poly, lam, xs):
    """Evaluate A f(x+d) - B f(x) + C f(x-d) - lam f(x) pointwise from the printed coefficients."""
    a1, a2, a3, a4, a5, d = params.a1, params.a2, params.a3, params.a4, params.a5, params.delta
    out = []
    for x in xs:
        Ax = a4 / d + a2 / d**2 * x + a1 / d**3 * x**2
        Bx = -a5 + a4 / d - (a1 / d**2 - 2 * a2 / d**2 + a3 / d) * x + 2 * a1 / d**3 * x**2
        Cx = -(a1 / d**2 - a2 / d**2 + a3 / d) * x + a1 / d**3 * x**2
        out.append(Ax * f(x + d) - Bx * f(x) + Cx * f(x - d) - lam * f(x))
    return out


# -- build_operator / three-point form ---------------------------------------

def test_scalar_operator():
    p = SolvableParams(a5=F(7, 3))
    assert build_operator(p, DIFFERENTIAL) == DiffOp.scalar(F(7, 3))
    assert build_operator(p, HeisenbergRep.difference(1)).terms == ((0, Poly([F(7, 3)])),)


def test_charlier_operator():
    L = build_operator(CHARLIER_2, HeisenbergRep.difference(1))
    mu = 2
    assert L.coeff(1) == Poly([mu])
    assert L.coeff(0) == -Poly([mu, 1])
    assert L.coeff(-1) == Poly.x()


def test_hahn_three_point_coefficients():
    A_, B_, C_ = three_point_coefficients(HAHN_003)
    assert A_ == Poly([2, 1, -1])
    assert B_ == Poly([2, 4, -2])
    assert C_ == Poly([0, 3, -1])


def test_charlier_three_point_coefficients():
    mu = F(5, 3)
    assert three_point_coefficients(SolvableParams(0, 0, -1, mu, 0, 1)) == (Poly([mu]), Poly([mu, 1]), Poly.x())


def test_zero_params_zero_operator():
    assert explicit_three_point(SolvableParams()).is_zero()
    assert differential_operator(SolvableParams()).is_zero()


@settings(max_examples=60)
@given(params_st)
def test_word_equals_three_point(params):
    L = build_operator(params, HeisenbergRep.difference(params.delta))
    assert L == explicit_three_point(params)
    assert shift_support(L) <= {-1, 0, 1}


@settings(max_examples=60)
@given(params_st)
def test_word_equals_third_order_operator(params):
    assert build_operator(params, DIFFERENTIAL) == differential_operator(params)


@settings(max_examples=30)
@given(params_st, st.integers(0, 6), st.lists(rationals(), min_size=1, max_size=4))
def test_three_point_matches_pointwise_oracle(params, k, xs):
    L = explicit_three_point(params)
    f = Poly.monomial(k) + Poly([1, -2])
    image = L(f)
    lhs = [image(x) for x in xs]
    assert lhs == three_point_residual(params, f, 0, xs)


# -- spectrum ----------------------------------------------------------------

def test_spectrum_examples():
    assert spectrum(HAHN_003, 3) == [0, -2, -6, -12]
    assert spectrum(SolvableParams(), 0) == [0]
    meixner = SolvableParams(0, F(-1, 2), F(-1, 2), F(1, 2), 0, 1)  # gamma=1, mu=1/2
    assert spectrum(meixner, 3)[3] == F(-3, 2)


def test_spectrum_includes_a5():
    p = SolvableParams(1, 0, 2, 0, F(1, 3), F(1, 2))
    assert spectrum(p, 2) == [F(1, 3), F(1, 3) + 2 + 2, F(1, 3) + 8 + 4]
    for rep in (DIFFERENTIAL, HeisenbergRep.difference(p.delta)):
        assert matrix_in_basis(build_operator(p, rep), MONOMIAL, 2).diagonal() == spectrum(p, 2)


def test_triangular_and_diagonal(rng):
    for _ in range(20):
        p = random_params(rng)
        lams = spectrum(p, 30)
        for rep in (DIFFERENTIAL, HeisenbergRep.difference(p.delta)):
            M = matrix_in_basis(build_operator(p, rep), MONOMIAL, 30)
            assert M.is_upper_triangular()
            assert M.diagonal() == lams


def test_third_order_diagonal_formula(rng):
    for _ in range(10):
        p = random_params(rng)
        D = differential_operator(p)
        for k in range(12):
            assert D(Poly.monomial(k))[k] == p.a1 / p.delta * k * k + p.a3 * k + p.a5


# -- eigenpolynomials --------------------------------------------------------

def test_charlier_k1():
    res = eigenpolys(CHARLIER_2, HeisenbergRep.difference(1), 1)
    assert res[1].poly == Poly([-2, 1]) and res[1].eigenvalue == -1


def test_charlier_k3_frozen():
    # frozen from an independent symbolic solve of the difference equation
    res = eigenpolys(CHARLIER_2, HeisenbergRep.difference(1), 3)
    assert res[3].poly == Poly([-8, 20, -9, 1])


def test_hahn_k1():
    res = eigenpolys(HAHN_003, HeisenbergRep.difference(1), 1)
    assert res[1].poly == Poly([-1, 1]) and res[1].eigenvalue == -2


def test_degenerate_raises():
    with pytest.raises(DegenerateSpectrum) as info:
        eigenpolys(SolvableParams(1, 0, -3, 0, 0, 1), HeisenbergRep.difference(1), 3)
    assert (info.value.k, info.value.j) == (1, 2)


@pytest.mark.parametrize("rep_kind", ["differential", "difference"])
def test_eigen_residual_zero(rng, rep_kind):
    done = 0
    while done < 15:
        p = random_params(rng)
        if not nondegenerate(p, 12):
            continue
        rep = HeisenbergRep.difference(p.delta) if rep_kind == "difference" else DIFFERENTIAL
        L = build_operator(p, rep)
        res = eigenpolys(p, rep, 12)
        for e in res.entries:
            assert e.poly.degree == e.k and e.poly.leading == 1
            assert (L(e.poly) - e.poly.scale(e.eigenvalue)).is_zero()
        if rep.is_difference:
            xs = [F(0), F(1, 3), F(-5, 2)]
            for e in res.entries:
                assert three_point_residual(p, e.poly, e.eigenvalue, xs) == [0, 0, 0]
        done += 1


def test_spectral_result_json():
    obj = eigenpolys(HAHN_003, HeisenbergRep.difference(1), 1).to_json()
    assert obj["rep"] == "difference"
    assert obj["entries"][1] == {"k": 1, "lambda": "-2", "poly": ["-1", "1"]}


# -- third-order operator ----------------------------------------------------

def test_charlier_differential_operator():
    assert differential_operator(CHARLIER_2) == DiffOp([0, Poly([2, -1])])


# -- isospectrality ----------------------------------------------------------

def test_isospectral_hahn():
    rep = isospectral_check(HAHN_003, 5)
    assert rep.passed
    assert rep.data["diagonal"] == ["0", "-2", "-6", "-12", "-20", "-30"]


def test_isospectral_constant():
    rep = isospectral_check(SolvableParams(a5=F(3, 4)), 4)
    assert rep.passed and set(rep.data["diagonal"]) == {"3/4"}


# -- umbral transfer ---------------------------------------------------------

def test_umbral_charlier_chain():
    cont = eigenpolys(CHARLIER_2, DIFFERENTIAL, 2)[2].poly
    assert cont == Poly([4, -4, 1])
    image = umbral_map(cont, 1)
    assert image == Poly([4, -5, 1])
    L = explicit_three_point(CHARLIER_2)
    assert L(image) == image.scale(-2)
    assert umbral_transfer_check(CHARLIER_2, 2).passed


def test_umbral_constant_and_degree_one():
    assert umbral_map(Poly([1]), 1) == Poly([1])
    assert umbral_map(Poly([-1, 1]), 1) == Poly([-1, 1])
    assert umbral_transfer_check(HAHN_003, 1).passed


def test_umbral_transfer_random(rng):
    done = 0
    while done < 8:
        p = random_params(rng)
        if nondegenerate(p, 10):
            assert umbral_transfer_check(p, 10).passed
            done += 1


def test_umbral_conjugates_matrices(rng):
    # umbral map sends monomial x^k to falling x^(k): M_diff(monomial) == M_diff-rep(falling)
    for _ in range(5):
        p = random_params(rng)
        d = 10
        M_cont = matrix_in_basis(build_operator(p, DIFFERENTIAL), MONOMIAL, d)
        M_disc = matrix_in_basis(build_operator(p, HeisenbergRep.difference(p.delta)), Basis.falling(p.delta), d)
        assert M_cont == M_disc


# -- representation invariance -----------------------------------------------

def stirling_matrices(n, delta):
    """Monomial -> falling (S2) and falling -> monomial (S1) coordinate maps."""
    to_fall = MatrixQ([[stirling2(j, i) * delta ** (j - i) if i <= j else 0 for j in range(n)] for i in range(n)])
    to_mono = MatrixQ([[stirling1_signed(j, i) * delta ** (j - i) if i <= j else 0 for j in range(n)] for i in range(n)])
    return to_fall, to_mono


def test_fock_examples():
    assert fock_matrix_invariance(B * A, 6)
    ref = matrix_in_basis(realize(B * A, DIFFERENTIAL), MONOMIAL, 6)
    assert ref == MatrixQ([[i if i == j else 0 for j in range(7)] for i in range(7)])
    assert fock_matrix_invariance(Scalar(F(5, 2)), 4)


def _rand_word(rng):
    from test_opalg import rand_word

    return rand_word(rng, 6)


def test_fock_invariance_against_stirling_oracle(rng):
    dmax = 12
    for _ in range(15):
        w = _rand_word(rng)
        assert fock_matrix_invariance(w, dmax)
        rows = dmax + w.length()
        n = rows + 1
        for delta in (F(1), F(1, 2), F(-2, 3)):
            rep = HeisenbergRep.difference(delta)
            M_mono = matrix_in_basis(realize(w, rep), MONOMIAL, rows + w.length(), cols=n)
            to_fall, to_mono = stirling_matrices(n, delta)
            big_fall, _ = stirling_matrices(rows + w.length() + 1, delta)
            conj = big_fall @ M_mono @ to_mono
            ref = matrix_in_basis(realize(w, DIFFERENTIAL), MONOMIAL, rows, cols=dmax + 1)
            for i in range(rows + 1):
                for j in range(dmax + 1):
                    assert conj[i, j] == ref[i, j]


def test_fock_invariance_sl2_words():
    for n in range(4):
        for word in (jplus_word(n), jzero_word(n), jminus_word(n)):
            assert fock_matrix_invariance(word, 8)
    assert fock_matrix_invariance(solvable_word(HAHN_003), 8)
