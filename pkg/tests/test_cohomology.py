import json
import random
from fractions import Fraction

import pytest

from gammacoh.classes import e2k, eisenstein_on
from gammacoh.cohomology import (DecomposableClass, CocycleClass, coboundary_rows, derivation_value,
                                 fox_derivative, h0, h0_module, h1, pair_decomposable, parabolic_analysis,
                                 principal_derivation, principal_from_poly, restrict_to_cyclic,
                                 shapiro_h1, spanning_rank)
from gammacoh.linalg import rank_of_rows
from gammacoh.modular import (GAMMA_Q, SL2Z, THETA, NotInGroupError, GroupWord, I, MINUS_I, S, T, U,
                              IntMatrix2, cyclic_presentation, evaluate_word, sl2z_word)
from gammacoh.representations import DUAL, STANDARD, HomogeneousPoly, SymPower, act

from conftest import random_poly, random_sl2z, random_theta


def as_strings(d):
    return {str(k): v for k, v in d.items()}


def test_fox_of_power():
    got = as_strings(fox_derivative(GroupWord.parse("A^4"), "A"))
    want = as_strings({GroupWord(): 1, GroupWord.parse("A"): 1, GroupWord.parse("A^2"): 1,
                       GroupWord.parse("A^3"): 1})
    assert got == want
    assert fox_derivative(GroupWord.parse("A^4"), "B") == {}


def test_fox_of_mixed_relator():
    got = as_strings(fox_derivative(GroupWord.parse("A^2*B^-3"), "B"))
    want = as_strings({GroupWord.parse(w): -1 for w in ("A^2*B^-1", "A^2*B^-2", "A^2*B^-3")})
    assert got == want
    assert as_strings(fox_derivative(GroupWord.parse("A^2*B^-3"), "A")) == as_strings(
        {GroupWord(): 1, GroupWord.parse("A"): 1})


@pytest.mark.parametrize("pres, k, expected", [
    (SL2Z, 2, 1), (SL2Z, 3, 0), (SL2Z, 10, 3), (SL2Z, 12, 1), (SL2Z, 0, 0),
    (THETA, 0, 1), (THETA, 2, 2), (THETA, 6, 4),
])
def test_h1_examples(pres, k, expected):
    assert h1(pres, k).dim == expected


@pytest.mark.parametrize("k", range(0, 9))
def test_variants_agree(k):
    assert h1(SL2Z, k, STANDARD).dim == h1(SL2Z, k, DUAL).dim
    assert h1(THETA, k, STANDARD).dim == h1(THETA, k, DUAL).dim


@pytest.mark.parametrize("k", range(0, 7))
def test_shapiro_matches_theta(k):
    assert shapiro_h1(k) == h1(THETA, k).dim


def test_h0_examples():
    assert len(h0(SL2Z, 0)) == 1
    assert h0(SL2Z, 2) == []
    assert h0(THETA, 4) == []
    inv = h0(cyclic_presentation(T), 2)
    assert len(inv) == 1
    assert act(T, inv[0]) == inv[0]


def test_boundary_relations():
    # dim B^1 = dim V - dim V^G
    for pres in (SL2Z, THETA):
        for k in range(0, 7):
            space = h1(pres, k)
            assert space.b1_dim == k + 1 - len(h0(pres, k))
            assert space.dim == space.z1_dim - space.b1_dim


def test_coboundaries_are_cocycles():
    rng = random.Random(3)
    for pres in (SL2Z, THETA):
        for k in (2, 4, 5):
            v = random_poly(rng, k, DUAL)
            c = principal_from_poly(pres, v)
            assert c.satisfies_relators()
            assert h1(pres, k).is_coboundary(c)
            w = h1(pres, k).coboundary_witness(c)
            assert principal_derivation(pres, SymPower(k, DUAL), w).flat() == c.flat()


def test_basis_classes_are_cocycles_and_nontrivial():
    for pres in (SL2Z, THETA):
        space = h1(pres, 8)
        for i, b in enumerate(space.basis):
            assert b.satisfies_relators()
            assert not space.is_coboundary(b)
            coords = space.coordinates(b)
            assert coords == tuple(Fraction(int(j == i)) for j in range(space.dim))


def test_non_cocycle_rejected():
    bad = CocycleClass(SL2Z, SymPower(2, DUAL), ((1, 0, 0), (0, 0, 0)))
    assert not bad.satisfies_relators()
    with pytest.raises(ValueError):
        h1(SL2Z, 2).coordinates(bad)
    with pytest.raises(ValueError):
        CocycleClass(SL2Z, SymPower(2, DUAL), ((1, 0, 0),))


def test_derivation_value_examples():
    c = e2k(1).underlying
    assert derivation_value(c, I).is_zero()
    assert derivation_value(c, SL2Z.image("A")) == HomogeneousPoly(2, DUAL, (1, 0, -1))
    assert derivation_value(c, SL2Z.image("B")).is_zero()
    assert str(derivation_value(c, T)) == "-ex^2 + 2*ex*ey"


@pytest.mark.parametrize("pres, sampler", [(SL2Z, random_sl2z), (THETA, random_theta)])
def test_derivation_law_and_word_independence(pres, sampler):
    rng = random.Random(7)
    space = h1(pres, 6)
    for _ in range(60):
        g, h = sampler(rng), sampler(rng)
        for b in space.basis:
            lhs = derivation_value(b, g @ h)
            assert lhs == derivation_value(b, g) + act(g, derivation_value(b, h))
            w = pres.word(g) * pres.word(h)
            assert derivation_value(b, g @ h, w) == lhs


def test_wrong_word_rejected():
    c = e2k(1).underlying
    with pytest.raises(ValueError):
        derivation_value(c, T, GroupWord.parse("A"))


def test_restriction_examples():
    c = e2k(1).underlying
    r = restrict_to_cyclic(c, T)
    assert not r.is_zero and r.target_dim == 1
    for g in (I, MINUS_I, SL2Z.image("A"), SL2Z.image("B")):
        assert restrict_to_cyclic(c, g).is_zero
    th = eisenstein_on(THETA, 1)
    with pytest.raises(NotInGroupError):
        restrict_to_cyclic(th, T)
    assert not restrict_to_cyclic(th, U).is_zero


def test_elliptic_restrictions_vanish():
    rng = random.Random(9)
    space = h1(SL2Z, 10)
    for _ in range(30):
        x = random_sl2z(rng)
        for e in (SL2Z.image("A"), SL2Z.image("B")):
            g = x @ e @ x.inverse()
            for b in space.basis:
                assert restrict_to_cyclic(b, g).is_zero


def test_restriction_is_coboundary_invariant():
    rng = random.Random(10)
    space = h1(SL2Z, 4)
    b = space.basis[0]
    for _ in range(20):
        cb = principal_from_poly(SL2Z, random_poly(rng, 4, DUAL))
        for g in (T, GAMMA_Q, T @ T @ S):
            assert restrict_to_cyclic(b + cb, g).coordinates == restrict_to_cyclic(b, g).coordinates


def test_pairing_with_decomposables():
    c = e2k(1).underlying
    assert pair_decomposable(c, DecomposableClass(GAMMA_Q, 1)) == -1
    assert pair_decomposable(c, DecomposableClass(T, 1)) == -1
    with pytest.raises(ValueError):
        pair_decomposable(c, DecomposableClass(T, 2))
    with pytest.raises(ValueError):
        DecomposableClass(T, 0)


def test_pairing_is_coboundary_invariant():
    rng = random.Random(12)
    for m in (1, 2, 3):
        c = e2k(m).underlying
        for _ in range(20):
            g = random_sl2z(rng)
            cb = principal_from_poly(SL2Z, random_poly(rng, 2 * m, DUAL))
            d = DecomposableClass(g, m)
            assert pair_decomposable(c + cb, d) == pair_decomposable(c, d)


def test_spanning_examples():
    assert spanning_rank(SL2Z, 1, 6).full
    short = spanning_rank(SL2Z, 5, 8)
    assert (short.rank, short.dim) == (2, 3)
    assert spanning_rank(SL2Z, 5, 12).full
    for m in range(1, 5):
        assert spanning_rank(THETA, m, 8).full
    cert = spanning_rank(SL2Z, 1, 1, elements=[T])
    assert cert.full and cert.detecting == [T]
    with pytest.raises(ValueError):
        spanning_rank(SL2Z, 0, 8)


@pytest.mark.parametrize("pres, m", [(SL2Z, 1), (SL2Z, 5), (THETA, 1), (THETA, 3)])
def test_parabolic_analysis(pres, m):
    pa = parabolic_analysis(pres, m)
    assert pa.consistent
    assert pa.num_cusps == (1 if pres is SL2Z else 2)
    assert pa.dim_parabolic_subspace == pa.dim_h1 - pa.num_cusps


def test_h1_json_serializes():
    data = h1(THETA, 2).to_json()
    text = json.dumps(data, sort_keys=True)
    assert json.loads(text)["dim"] == 2
    assert set(data["basis"][0]["generator_values"]) == {"S", "U", "Z"}


def test_coboundary_rows_rank():
    for k in range(0, 6):
        rows = coboundary_rows(SL2Z, SymPower(k, DUAL))
        assert rank_of_rows(rows, 2 * (k + 1)) == h1(SL2Z, k).b1_dim


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("GAMMACOH_MAX_DEGREE", "4")
    with pytest.raises(ValueError):
        h1(SL2Z, 6)
    with pytest.raises(ValueError):
        shapiro_h1(6)
