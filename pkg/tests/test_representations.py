import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from gammacoh.linalg import rank_of_rows
from gammacoh.modular import GAMMA_Q, I, MINUS_I, SL2Z, T, THETA_COSET_REPS, U, IntMatrix2
from gammacoh.representations import (DUAL, STANDARD, Coinduced, CoinducedElement, HomogeneousPoly,
                                      SymPower, act, coinduce, delta_star, gram_matrix, pairing,
                                      pr_x, s_gamma)

from conftest import polys, random_poly, random_sl2z, sl2z_elements

X, Y = sp.symbols("X Y")


def to_sympy(f: HomogeneousPoly):
    return sp.expand(sum((sp.Rational(c.numerator, c.denominator) * X ** i * Y ** j for i, j, c in f.terms()), sp.Integer(0)))


def sympy_act(g: IntMatrix2, f: HomogeneousPoly):
    """Direct substitution oracle."""
    a, b, c, d = g.a, g.b, g.c, g.d
    if f.variant == STANDARD:
        sub = {X: a * X + c * Y, Y: b * X + d * Y}
    else:
        sub = {X: d * X - b * Y, Y: -c * X + a * Y}
    return sp.expand(to_sympy(f).subs(sub, simultaneous=True))


def poly(variant, *coeffs):
    return HomogeneousPoly(len(coeffs) - 1, variant, coeffs)


def test_identity_acts_trivially():
    f = poly(DUAL, 1, -2, 3, Fraction(1, 2))
    assert act(I, f) == f


def test_beta_inverse_on_dual_variables():
    binv = SL2Z.image("B").inverse()
    assert binv == IntMatrix2(1, -1, 1, 0)
    ex, ey = poly(DUAL, 1, 0), poly(DUAL, 0, 1)
    assert act(binv, ex) == ey
    assert act(binv, ey) == ey - ex


def test_gamma_q_fixes_its_invariant():
    f = poly(STANDARD, -1, -2, -1)
    assert act(GAMMA_Q, f) == f
    assert sympy_act(GAMMA_Q, f) == to_sympy(f)


@given(sl2z_elements, st.integers(0, 6).flatmap(lambda k: polys(k, STANDARD)))
def test_standard_action_matches_substitution(g, f):
    assert to_sympy(act(g, f)) == sympy_act(g, f)


@given(sl2z_elements, st.integers(0, 6).flatmap(lambda k: polys(k, DUAL)))
def test_dual_action_matches_substitution(g, f):
    assert to_sympy(act(g, f)) == sympy_act(g, f)


@pytest.mark.parametrize("variant", [STANDARD, DUAL])
def test_action_axiom_200(variant):
    rng = random.Random(11)
    for _ in range(200):
        g, h = random_sl2z(rng), random_sl2z(rng)
        f = random_poly(rng, rng.randint(0, 8), variant)
        assert act(g @ h, f) == act(g, act(h, f))


@pytest.mark.parametrize("variant", [STANDARD, DUAL])
@pytest.mark.parametrize("k", range(0, 7))
def test_minus_identity_acts_by_sign(variant, k):
    f = random_poly(random.Random(k), k, variant)
    assert act(MINUS_I, f) == f.scale((-1) ** k)


@pytest.mark.parametrize("g, expected", [
    (I, (0, 0, 0)),
    (T, (1, 0, 0)),
    (GAMMA_Q, (-1, -2, -1)),
])
def test_s_gamma_values(g, expected):
    assert s_gamma(g) == poly(STANDARD, *expected)


def test_s_gamma_invariance_200():
    rng = random.Random(5)
    for _ in range(200):
        g = random_sl2z(rng)
        assert act(g, s_gamma(g)) == s_gamma(g)


def test_pairing_examples():
    assert pairing(poly(DUAL, 1, 0, 0), poly(STANDARD, 1, 0, 0)) == 1
    assert pairing(poly(DUAL, 0, 1, 0), poly(STANDARD, 1, 0, 0)) == 0
    # weights 1, 1/2, 1: (-1)(-1) + 2 * (-2) / 2 = -1
    assert pairing(poly(DUAL, -1, 2, 0), poly(STANDARD, -1, -2, -1)) == -1


def test_pairing_weights():
    # <ex^i ey^(k-i), x^i y^(k-i)> = i!(k-i)!/k!
    assert pairing(HomogeneousPoly.monomial(1, 3, DUAL), HomogeneousPoly.monomial(1, 3, STANDARD)) == Fraction(1, 4)
    assert pairing(HomogeneousPoly.monomial(2, 2, DUAL), HomogeneousPoly.monomial(2, 2, STANDARD)) == Fraction(1, 6)


def test_pairing_degree_mismatch():
    with pytest.raises(ValueError):
        pairing(poly(DUAL, 1, 0), poly(STANDARD, 1, 0, 0))


def test_pairing_equivariance_200():
    rng = random.Random(13)
    for _ in range(200):
        g = random_sl2z(rng)
        k = rng.randint(0, 12)
        w, v = random_poly(rng, k, DUAL), random_poly(rng, k, STANDARD)
        assert pairing(act(g, w), act(g, v)) == pairing(w, v)


@pytest.mark.parametrize("k", range(0, 13))
def test_pairing_is_perfect(k):
    assert rank_of_rows(gram_matrix(k), k + 1) == k + 1


def test_delta_star():
    k = 3
    f = HomogeneousPoly.monomial(2 * k, 0, DUAL) - HomogeneousPoly.monomial(0, 2 * k, DUAL)
    assert delta_star(f).is_zero()
    ey = poly(DUAL, 0, 1)
    g = ey * ey - (ey - poly(DUAL, 1, 0)) ** 2
    assert str(delta_star(g)) == "e^2"
    assert delta_star(HomogeneousPoly.zero(4, DUAL)).is_zero()


@pytest.mark.parametrize("k", range(1, 6))
def test_pr_x(k):
    ex, ey = poly(DUAL, 1, 0), poly(DUAL, 0, 1)
    f = ey ** (2 * k) - (ey - ex) ** (2 * k)
    v = pr_x(f)
    assert v.coefficient == -1 and v.degree == 2 * k and str(v) == f"-ex^{2 * k}"
    assert pr_x(ex ** 5).coefficient == 1
    assert pr_x(ex * ey).is_zero()


def test_delta_star_lands_in_gamma_q_coinvariants():
    rng = random.Random(17)
    for _ in range(100):
        f = random_poly(rng, rng.randint(0, 10), DUAL)
        assert delta_star(act(GAMMA_Q, f)) == delta_star(f)


def test_json_round_trip():
    f = poly(DUAL, Fraction(-1, 3), 0, 2)
    data = f.to_json()
    assert data == {"ex^2": "-1/3", "ey^2": "2"}
    assert HomogeneousPoly.from_json(data, 2, DUAL) == f
    g = poly(STANDARD, 1, 0, 0, 5)
    assert g.to_json() == {"x^3": "1", "y^3": "5"}
    assert HomogeneousPoly.from_json({"ex^2*ey^1": "1"}, 3, DUAL) == poly(DUAL, 0, 1, 0, 0)


def test_human_printing():
    assert str(poly(DUAL, -1, 2, 0)) == "-ex^2 + 2*ex*ey"
    assert str(HomogeneousPoly.zero(3, STANDARD)) == "0"


# -- coinduction ----------------------------------------------------------------

def test_default_coset_reps_are_valid():
    Coinduced(SymPower(2, DUAL))  # validates pairwise inequivalence
    with pytest.raises(ValueError):
        coinduce(2, DUAL, (I, T, T @ T))  # T^2 lies in the theta group


@pytest.mark.parametrize("k", range(0, 6))
def test_coinduced_dimension(k):
    assert coinduce(k, DUAL).dim == 3 * (k + 1)


def test_coinduced_identity_and_action_axiom():
    mod = coinduce(3, STANDARD)
    rng = random.Random(23)
    n = mod.dim
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    assert mod.matrix(I) == ident
    for _ in range(100):
        g, h = random_sl2z(rng), random_sl2z(rng)
        F = CoinducedElement(mod.base, tuple(random_poly(rng, 3, STANDARD) for _ in range(3)))
        assert mod.act(g @ h, F) == mod.act(g, mod.act(h, F))


def test_coinduced_restricted_to_theta_contains_base():
    # evaluation at the identity coset is theta-equivariant
    mod = coinduce(2, DUAL)
    rng = random.Random(29)
    for _ in range(30):
        F = CoinducedElement(mod.base, tuple(random_poly(rng, 2, DUAL) for _ in range(3)))
        h = U @ GAMMA_Q
        assert mod.act(h, F).components[0] == act(h, F.components[0])
    assert THETA_COSET_REPS[0] == I
