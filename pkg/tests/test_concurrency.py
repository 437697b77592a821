"""Concurrent-line ideal generators, the numeric decision rule, and the
multidegree polynomial."""

from math import comb

import numpy as np
import pytest

from gvcam.concurrency import (AmbiguousPencil, InvalidN, PROBE_POINTS,
                               concurrent_by_generators, coplanarity_cubics,
                               cubic_generators, evaluate_generators,
                               find_common_point, generator_counts,
                               multidegree, quadric_generators,
                               trilinear_transversal)
from gvcam.numeric import norm, unitize, vec
from gvcam.plucker import incidence, line_from_points
from conftest import (assert_proj_close, lines_through, rand_line, rand_point,
                      rational_lines_through)

E = np.eye(4)
TRIANGLE = [line_from_points(E[0], E[1]),
            line_from_points(E[1], E[2]),
            line_from_points(E[0], E[2])]


def test_probe_points_are_basis_and_pairwise_sums():
    assert len(PROBE_POINTS) == 10
    directions = [unitize(np.asarray(u, dtype=float)) for u in PROBE_POINTS]
    expect = [unitize(E[i]) for i in range(4)]
    expect += [unitize(E[i] + E[j])
               for i in range(4) for j in range(i + 1, 4)]
    for got, want in zip(directions, expect):
        np.testing.assert_allclose(got, want, atol=1e-15)


def test_soundness_float():
    rng = np.random.default_rng(201)
    for n in (2, 3, 4, 5):
        for _ in range(30):
            lines, _ = lines_through(rng, n)
            rep = evaluate_generators(lines)
            assert len(rep.quadrics) == comb(n + 1, 2)
            assert len(rep.cubics) == 10 * comb(n, 3)
            assert rep.max_residual <= 1e-9


def test_soundness_exact():
    rng = np.random.default_rng(202)
    for n in (2, 3, 4):
        for _ in range(10):
            lines, _ = rational_lines_through(rng, n)
            rep = evaluate_generators(lines)
            assert all(v == 0 for v in rep.quadrics.values())
            assert all(v == 0 for v in rep.cubics.values())


def test_discrimination_1000_trials():
    rng = np.random.default_rng(203)
    failures = 0
    for _ in range(1000):
        n = int(rng.integers(3, 6))
        lines, _ = lines_through(rng, n)
        bumped = []
        for p in lines:
            d = rng.standard_normal(6)
            bumped.append(unitize(p) + (2e-3 / norm(d)) * d)
        if evaluate_generators(bumped).max_residual < 1e-5:
            failures += 1
    assert failures == 0


def test_quadric_generators_counts_and_skew_pair():
    lines, _ = lines_through(np.random.default_rng(204), 3)
    rep = quadric_generators(lines)
    assert len(rep) == comb(4, 2)
    skew = quadric_generators([line_from_points(E[0], E[1]),
                               line_from_points(E[2], E[3])])
    assert any(abs(v) > 0.5 for v in skew.values())


def test_cubics_vanish_on_concurrent_triple():
    p = line_from_points(E[0], E[1])
    q = line_from_points(E[0], E[2])
    r = line_from_points(E[0], E[3])
    vals = cubic_generators(p, q, r)
    assert len(vals) == 10
    assert all(v == 0 for v in vals.values())


def test_triangle_separates_quadrics_from_cubics():
    """Pairwise-meeting coplanar lines kill every quadric but not every
    cubic; the coplanarity cubics vanish instead — and swap roles on a
    concurrent non-coplanar triple."""
    rep = evaluate_generators(TRIANGLE)
    assert all(abs(complex(v)) <= 1e-15 for v in rep.quadrics.values())
    assert any(abs(complex(v)) > 1e-3 for v in rep.cubics.values())
    cop = coplanarity_cubics(*TRIANGLE)
    assert all(abs(complex(v)) <= 1e-15 for v in cop.values())

    rng = np.random.default_rng(205)
    (p, q, r), _ = lines_through(rng, 3)
    conc = evaluate_generators([p, q, r])
    assert conc.max_residual <= 1e-12
    cop2 = coplanarity_cubics(unitize(p), unitize(q), unitize(r))
    assert any(abs(complex(v)) > 1e-6 for v in cop2.values())


def test_trilinear_four_minors_are_multiples_of_one_form():
    """The four maximal minors of the stacked 4x3 system all equal
    (-1)^i * u_i times the same trilinear value, so any one of them (the
    canonical stable choice included) represents the transversal form."""
    from gvcam.plucker import primal_matrix
    rng = np.random.default_rng(206)
    for _ in range(40):
        p, q, r = (rand_line(rng) for _ in range(3))
        u = rand_point(rng)
        minors = trilinear_transversal(p, q, r, u, all_minors=True)
        t = trilinear_transversal(p, q, r, u)
        assert len(minors) == 4
        assert any(abs(m) == pytest.approx(abs(t), rel=1e-12)
                   for m in minors)
        cols = np.column_stack([primal_matrix(l) @ u for l in (p, q, r)])
        gauged = []
        for drop in range(4):
            if abs(u[drop]) < 1e-6:
                continue
            rows = [i for i in range(4) if i != drop]
            m = np.linalg.det(cols[rows, :])
            gauged.append((-1) ** drop * m / u[drop])
        spread = max(gauged) - min(gauged)
        assert spread <= 1e-9 * max(1.0, max(abs(g) for g in gauged))


def test_trilinear_triangle_offplane_probe_nonzero():
    # probe off the triangle's plane: the three joined planes are
    # independent exactly because the lines are not concurrent
    assert abs(trilinear_transversal(*TRIANGLE, E[3])) > 1e-6
    # probe at a triangle vertex degenerates to zero by construction
    assert abs(trilinear_transversal(*TRIANGLE, E[2])) <= 1e-15


def test_set_theoretic_equivalence_200_triples():
    rng = np.random.default_rng(207)
    tested = 0
    while tested < 200:
        if tested % 2 == 0:
            lines, _ = lines_through(rng, 3)
        else:
            lines = [rand_line(rng) for _ in range(3)]
        lines = [unitize(p) for p in lines]
        pairwise = max(abs(incidence(p, q))
                       for i, p in enumerate(lines)
                       for q in lines[i + 1:])
        trilinears = max(abs(trilinear_transversal(*lines, E[i]))
                         for i in range(4))
        algebraic = max(pairwise, trilinears) <= 1e-9
        found = find_common_point(lines) is not None
        # skip the undecided band around the threshold
        if 1e-11 < max(pairwise, trilinears) < 1e-7:
            continue
        assert algebraic == found
        tested += 1


def test_find_common_point_recovers_construction():
    rng = np.random.default_rng(208)
    x = np.array([1.0, 2.0, 3.0, 4.0])
    lines, _ = lines_through(rng, 4, x)
    y = find_common_point(lines)
    assert y is not None
    assert_proj_close(y, x, 1e-9)


def test_find_common_point_skew_pair_none():
    assert find_common_point([line_from_points(E[0], E[1]),
                              line_from_points(E[2], E[3])]) is None


def test_find_common_point_repeated_line_ambiguous():
    p = unitize(line_from_points(E[0], E[1]))
    with pytest.raises(AmbiguousPencil):
        find_common_point([p] * 5)


def test_find_common_point_requires_two_lines():
    with pytest.raises(InvalidN):
        find_common_point([line_from_points(E[0], E[1])])


def test_concurrent_by_generators_matches_decision():
    rng = np.random.default_rng(209)
    for k in range(60):
        if k % 2 == 0:
            lines, _ = lines_through(rng, 3)
        else:
            lines = [rand_line(rng) for _ in range(3)]
        lines = [unitize(p) for p in lines]
        assert concurrent_by_generators(lines) == (
            find_common_point(lines) is not None)


def test_multidegree_n4_reference_terms():
    poly = multidegree(4)
    terms = poly.term_strings()
    assert len(terms) == 16
    assert terms[0] == "4*t1^3*t2^3*t3^2*t4"
    assert sum(1 for t in terms if t.startswith("8*")) == 4
    assert sum(1 for t in terms if t.startswith("4*")) == 12
    assert poly.coefficient_sum == 80


def test_multidegree_structure_and_sum():
    for n in range(2, 11):
        poly = multidegree(n)
        assert poly.coefficient_sum == 8 * comb(n + 1, 3)
        for expo, coeff in poly.terms.items():
            assert sum(expo) == 3 * n - 3
            assert coeff in (4, 8)
            lowered = sorted(v for v in expo if v != 3)
            assert lowered == [1, 2] if coeff == 4 else lowered == [2, 2, 2]


def test_multidegree_rejects_small_n():
    with pytest.raises(InvalidN):
        multidegree(1)


def test_generator_counts_reference_values():
    assert generator_counts(2) == ((3, 0), (3, 0, 0))
    assert generator_counts(3) == ((6, 10), (6, 12, 4))
    assert generator_counts(4)[0] == (10, 40)
    for n in range(2, 9):
        (q, c), (gq, gc, gquart) = generator_counts(n)
        assert q == gq == comb(n + 1, 2)
        assert c == 10 * comb(n, 3)
        assert gc == 12 * comb(n, 3)
        assert gquart == 4 * comb(n + 1, 4)


def test_generator_report_payload_keys():
    lines, _ = lines_through(np.random.default_rng(210), 3)
    payload = evaluate_generators(lines).payload()
    assert "quadric[0][0]" in payload and "quadric[0][1]" in payload
    assert any(k.startswith("cubic[0][1][2][") for k in payload)


def test_camera_projection_tuples_are_concurrent():
    """Lines produced by projecting one point through several cameras
    land on the concurrency variety."""
    from gvcam.cameras import Pinhole, TwoSlit
    rng = np.random.default_rng(211)
    from conftest import rand_pinhole, rand_twoslit
    for _ in range(20):
        cams = [rand_pinhole(rng), rand_twoslit(rng),
                rand_pinhole(rng), rand_twoslit(rng)]
        x = rand_point(rng)
        lines = [cam.project(x) for cam in cams]
        assert evaluate_generators(lines).max_residual <= 1e-9
