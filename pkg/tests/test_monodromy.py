"""Tests for the numerical monodromy oracle."""

import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest

from schwarztri.monodromy import (
    InconclusiveError,
    LoopSpec,
    MonodromyRep,
    classify_projective,
    continue_solution,
    monodromy,
)
from schwarztri.rational import RatFunc
from schwarztri.triangle import AngleParams, build_r


def params(a, b, c):
    return AngleParams(F(a), F(b), F(c))


class TestLoopSpec:
    def test_radius_bounds(self):
        with pytest.raises(ValueError):
            LoopSpec(center=0j, radius=0.6)
        with pytest.raises(ValueError):
            LoopSpec(center=0j, radius=0.0)

    def test_base_outside_circle(self):
        with pytest.raises(ValueError):
            LoopSpec(center=0j, base_point=0.1 + 0j, radius=0.25)

    def test_polyline_closes_at_base(self):
        path = LoopSpec(center=0j).polyline()
        assert path[0] == path[-1] == 0.5 + 0j


class TestContinuation:
    def test_trivial_equation_identity_loop(self):
        m = continue_solution(RatFunc.constant(0), LoopSpec(center=0j).polyline())
        assert np.max(np.abs(m - np.eye(2))) < 1e-10

    def test_segment_transport_matches_series(self):
        # transport along a pole-free segment equals direct series evaluation
        r = build_r(params("1/2", "1/3", "1/7"))
        from schwarztri.series import series_solve_linear

        m = continue_solution(r, [0.5 + 0j, 0.6 + 0j])
        psi1, psi2 = series_solve_linear(r, 0.5 + 0j, 40)
        expected = np.array(
            [
                [psi1(0.6), psi2(0.6)],
                [psi1.derivative()(0.6), psi2.derivative()(0.6)],
            ]
        )
        assert np.max(np.abs(m - expected)) < 1e-11

    def test_path_through_pole_raises(self):
        r = build_r(params("1/2", "1/3", "1/7"))
        with pytest.raises(RuntimeError):
            continue_solution(r, [0.5 + 0j, -0.5 + 0j])  # crosses the pole at 0

    def test_hurwitz_loop_trace(self):
        r = build_r(params("1/2", "1/3", "1/7"))
        m0 = continue_solution(r, LoopSpec(center=0j).polyline())
        assert abs(np.trace(m0) - (-2 * math.cos(math.pi / 3))) < 1e-6


class TestMonodromy:
    def test_generic_rejected(self):
        with pytest.raises(ValueError):
            monodromy(AngleParams.generic())

    def test_trace_law_hurwitz(self):
        rep = monodromy(params("1/2", "1/3", "1/7"))
        assert abs(np.trace(rep.m0) - (-2 * math.cos(math.pi / 3))) < 1e-6
        assert abs(np.trace(rep.m1) - (-2 * math.cos(math.pi / 7))) < 1e-6
        assert not rep.resonant_warning

    def test_cusp_parabolic(self):
        rep = monodromy(params(0, 0, 0))
        for m in (rep.m0, rep.m1):
            assert abs(abs(np.trace(m)) - 2) < 1e-6
            assert np.max(np.abs(m - np.eye(2))) > 1e-3  # not the identity
        assert rep.resonant_warning

    def test_determinants_within_estimated_error(self):
        rep = monodromy(params("1/3", "2/5", "1/7"))
        for m in (rep.m0, rep.m1):
            assert abs(np.linalg.det(m) - 1) <= rep.estimated_error
        assert rep.estimated_error < 1e-8

    def test_loop_radius_independence(self):
        p = params("1/2", "1/3", "1/7")
        rep1 = monodromy(p)
        rep2 = monodromy(
            p,
            loop0=LoopSpec(center=0j, radius=0.125),
            loop1=LoopSpec(center=1 + 0j, radius=0.125),
        )
        assert np.max(np.abs(rep1.m0 - rep2.m0)) < 1e-8
        assert np.max(np.abs(rep1.m1 - rep2.m1)) < 1e-8

    def test_record_round_trip(self):
        rec = monodromy(params("1/2", "1/2", "1/2")).to_record()
        assert set(rec) == {"m0", "m1", "estimated_error", "resonant_warning"}


def _rep(m0, m1):
    return MonodromyRep(
        m0=np.array(m0, dtype=complex),
        m1=np.array(m1, dtype=complex),
        estimated_error=1e-13,
    )


class TestClassifyProjective:
    def test_identity_pair_is_trivial_group(self):
        cls = classify_projective(_rep(np.eye(2), np.eye(2)))
        assert cls.kind == "finite" and cls.order == 1

    def test_diagonal_infinite_order(self):
        a = cmath.exp(1j * 0.7)  # irrational rotation angle
        m = [[a, 0], [0, 1 / a]]
        cls = classify_projective(_rep(m, m))
        assert cls.kind == "triangularizable"

    def test_infinite_dihedral(self):
        a = cmath.exp(1j * 0.7)
        rot = [[a, 0], [0, 1 / a]]
        swap = [[0, 1], [-1, 0]]
        cls = classify_projective(_rep(rot, swap))
        assert cls.kind == "dihedral"

    def test_klein_four_is_finite(self):
        rep = monodromy(params("1/2", "1/2", "1/2"))
        cls = classify_projective(rep)
        assert cls.kind == "finite" and cls.order == 4

    def test_icosahedral_order(self):
        rep = monodromy(params("1/2", "1/3", "1/5"))
        cls = classify_projective(rep)
        assert cls.kind == "finite" and cls.order == 60

    def test_hurwitz_dense(self):
        rep = monodromy(params("1/2", "1/3", "1/7"))
        assert classify_projective(rep).kind == "dense"

    def test_unitary_regime_dense(self):
        rep = monodromy(params("3/4", "1/4", "1/4"))
        assert classify_projective(rep).kind == "dense"

    def test_reducible_euclidean_triangularizable(self):
        rep = monodromy(params("1/2", "1/3", "1/6"))
        assert classify_projective(rep).kind == "triangularizable"

    def test_finite_order_cap_respected(self):
        rep = monodromy(params("1/2", "1/3", "1/5"))
        cls = classify_projective(rep, max_order=120)
        assert cls.order is not None and cls.order <= 120

    def test_inconclusive_raises_not_misreports(self):
        # starving the caps on a genuinely finite group must raise rather
        # than report dense: every icosahedral element has finite order, so
        # no density certificate can exist
        rep = monodromy(params("1/2", "1/3", "1/5"))
        with pytest.raises(InconclusiveError):
            classify_projective(rep, max_order=5, max_word_length=2)
