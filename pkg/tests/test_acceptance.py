"""End-to-end acceptance checks with wall-clock limits.

Each test clears the caches first so its timing covers the full computation,
then records one PASS/FAIL line shown in the terminal summary.
"""

import random
import time
from fractions import Fraction

import pytest

from gammacoh.classes import (detection_report, e2k, evaluate_on_MP, evaluate_on_MQ11, h1_dim_oracle,
                              is_eisenstein_nontrivial, series_coefficient, series_discrepancy)
from gammacoh.cohomology import (DecomposableClass, derivation_value, h0, h1, pair_decomposable,
                                 parabolic_analysis, principal_from_poly, shapiro_h1, spanning_rank)
from gammacoh.linalg import rank_of_rows
from gammacoh.modular import SL2Z, THETA, T, cusp_orbits
from gammacoh.representations import (DUAL, STANDARD, HomogeneousPoly, _substitution_matrix, act,
                                      gram_matrix, pairing, pr_x, s_gamma)

from conftest import random_poly, random_sl2z, random_theta

pytestmark = pytest.mark.acceptance

CASES = 200


def clear_caches():
    h1.cache_clear()
    shapiro_h1.cache_clear()
    _substitution_matrix.cache_clear()


def run_criterion(log, number, title, limit, body):
    clear_caches()
    start = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - start
    if elapsed >= limit:
        failures.append(f"took {elapsed:.2f}s, limit {limit}s")
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s / {limit}s)"
    if failures:
        line += " :: " + "; ".join(failures[:5])
    log.append(line)
    print(line)
    assert not failures, line


def test_criterion_1_sl2z_dimensions(acceptance_log):
    def body():
        bad = []
        for m in range(1, 11):
            dim = h1(SL2Z, 2 * m).dim
            oracle, coeff = h1_dim_oracle(m, SL2Z), series_coefficient(SL2Z, m)
            if not dim == oracle == coeff:
                bad.append(f"m={m}: dim={dim} oracle={oracle} series={coeff}")
        expected = {1: 1, 5: 3, 7: 3}
        bad += [f"m={m}: expected {v}" for m, v in expected.items() if h1(SL2Z, 2 * m).dim != v]
        return bad
    run_criterion(acceptance_log, 1, "SL2Z dim H1 = oracle = corrected series, m=1..10", 30, body)


def test_criterion_2_theta_dimensions(acceptance_log):
    def body():
        bad = []
        for m in range(0, 9):
            dim, sh, coeff = h1(THETA, 2 * m).dim, shapiro_h1(2 * m), series_coefficient(THETA, m)
            if not dim == sh == coeff:
                bad.append(f"m={m}: presentation={dim} shapiro={sh} series={coeff}")
        expected = {0: 1, 1: 2, 2: 2, 3: 4}
        bad += [f"m={m}: expected {v}" for m, v in expected.items() if h1(THETA, 2 * m).dim != v]
        return bad
    run_criterion(acceptance_log, 2, "theta presentation = Shapiro = series, m=0..8", 60, body)


def test_criterion_3_eisenstein(acceptance_log):
    ex, ey = HomogeneousPoly(1, DUAL, (1, 0)), HomogeneousPoly(1, DUAL, (0, 1))

    def body():
        bad = []
        for k in range(1, 9):
            try:
                cls = e2k(k)  # raises if either relator identity fails
            except AssertionError as exc:
                bad.append(f"k={k}: {exc}")
                continue
            if not is_eisenstein_nontrivial(k):
                bad.append(f"k={k}: coboundary")
            v = cls.value(T)
            if v != ey ** (2 * k) - (ey - ex) ** (2 * k):
                bad.append(f"k={k}: value at T {v}")
            if str(pr_x(v)) != f"-ex^{2 * k}":
                bad.append(f"k={k}: pr_x {pr_x(v)}")
            if str(evaluate_on_MQ11(k).value) != f"e^{2 * k}":
                bad.append(f"k={k}: MQ11")
            if str(evaluate_on_MP(k, THETA).value) != f"-2*ex^{2 * k}":
                bad.append(f"k={k}: theta MP")
        return bad
    run_criterion(acceptance_log, 3, "Eisenstein cocycle suite, k=1..8", 10, body)


def test_criterion_4_spanning(acceptance_log):
    def body():
        bad = []
        for group in (SL2Z, THETA):
            for m in range(1, 5):
                cert = spanning_rank(group, m, 8)
                if not cert.full:
                    bad.append(f"{group.name} m={m}: rank {cert.rank} of {cert.dim}")
        return bad
    run_criterion(acceptance_log, 4, "decomposables span H1 at radius 8, m=1..4", 120, body)


def test_criterion_5_parabolic(acceptance_log):
    def body():
        bad = []
        for group, ncusps in ((SL2Z, 1), (THETA, 2)):
            for m in range(1, 7):
                pa = parabolic_analysis(group, m)
                if any(t != 1 for t in pa.cusp_target_dims):
                    bad.append(f"{group.name} m={m}: coinvariant dims {pa.cusp_target_dims}")
                if not pa.surjective:
                    bad.append(f"{group.name} m={m}: restriction not surjective")
                if pa.dim_h1 - pa.dim_parabolic_subspace != ncusps or pa.num_cusps != ncusps:
                    bad.append(f"{group.name} m={m}: codimension {pa.dim_h1 - pa.dim_parabolic_subspace}")
        return bad
    run_criterion(acceptance_log, 5, "parabolic exact sequence, m=1..6", 30, body)


def test_criterion_6_detection(acceptance_log):
    def body():
        bad = []
        for group in (SL2Z, THETA):
            for m in range(1, 5):
                rep = detection_report(group, m, radius=8)
                missing = [d["class_index"] for d in rep["detections"] if d["detecting_gamma"] is None]
                idle = [c["generator"] for c in rep["cusp_detections"] if c["class_index"] is None]
                if missing or idle or not rep["complete"]:
                    bad.append(f"{group.name} m={m}: undetected {missing}, idle cusps {idle}")
        return bad
    run_criterion(acceptance_log, 6, "detection certificates at radius 8, m=1..4", 120, body)


def test_criterion_7_properties(acceptance_log):
    def body():
        rng = random.Random(20261019)
        bad = []
        for variant in (STANDARD, DUAL):
            for i in range(CASES):
                g, h = random_sl2z(rng), random_sl2z(rng)
                f = random_poly(rng, rng.randint(0, 10), variant)
                if act(g @ h, f) != act(g, act(h, f)):
                    bad.append(f"action axiom {variant} case {i}")
        for i in range(CASES):
            g = random_sl2z(rng)
            if act(g, s_gamma(g)) != s_gamma(g):
                bad.append(f"s_gamma invariance case {i}")
        for i in range(CASES):
            g, k = random_sl2z(rng), rng.randint(0, 12)
            w, v = random_poly(rng, k, DUAL), random_poly(rng, k, STANDARD)
            if pairing(act(g, w), act(g, v)) != pairing(w, v):
                bad.append(f"pairing equivariance case {i}")
        bad += [f"pairing degenerate k={k}" for k in range(13) if rank_of_rows(gram_matrix(k), k + 1) != k + 1]
        for group, sampler in ((SL2Z, random_sl2z), (THETA, random_theta)):
            spaces = [h1(group, 2 * m) for m in range(1, 5)]
            for i in range(CASES):
                space = spaces[i % 4]
                g, h = sampler(rng), sampler(rng)
                w = group.word(g) * group.word(h)
                for b in space.basis:
                    lhs = derivation_value(b, g @ h)
                    if lhs != derivation_value(b, g) + act(g, derivation_value(b, h)):
                        bad.append(f"derivation law {group.name} case {i}")
                    if derivation_value(b, g @ h, w) != lhs:
                        bad.append(f"word dependence {group.name} case {i}")
        for i in range(CASES):
            m = rng.randint(1, 5)
            c = principal_from_poly(SL2Z, random_poly(rng, 2 * m, DUAL))
            val = pair_decomposable(c, DecomposableClass(random_sl2z(rng), m))
            if val != 0:
                bad.append(f"principal pairing {val} case {i}")
        for group in (SL2Z, THETA):
            for k in range(2, 17):
                if h0(group, k):
                    bad.append(f"{group.name} H0 nonzero at weight {k}")
            for k in range(1, 17, 2):
                if h1(group, k).dim:
                    bad.append(f"{group.name} odd weight {k} has H1")
            for k in range(0, 17):
                if h1(group, k, STANDARD).dim != h1(group, k, DUAL).dim:
                    bad.append(f"{group.name} dual/standard mismatch at {k}")
        return bad
    run_criterion(acceptance_log, 7, f"property suites, {CASES} random cases each", 60, body)


def test_criterion_8_discrepancy(acceptance_log):
    def body():
        bad = []
        first = series_discrepancy(1, 10)
        if first != series_discrepancy(1, 10):
            bad.append("report is not deterministic")
        row = next(r for r in first if r["m"] == 2)
        if row["degree"] != 4 * 2 + 1 or row["verbatim"] != 0 or row["computed_dim"] != 1:
            bad.append(f"weight 4 row {row}")
        if row["verbatim_agrees"]:
            bad.append("disagreement not reported")
        if not all(r["corrected_agrees"] for r in first):
            bad.append("corrected series disagrees")
        return bad
    run_criterion(acceptance_log, 8, "verbatim SL2Z series discrepancy reported", 5, body)
