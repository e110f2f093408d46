from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from sl2arc.arc import (
    ContinuationError,
    GluingError,
    analyze_curve,
    continue_arc,
    glue_hnn,
    irreducibility_margin,
)
from sl2arc.pretzel import kernel_closed_form, make_family
from sl2arc.sl2 import Mat2, frobenius_distance
from sl2arc.words import evaluate


@pytest.fixture(scope="module")
def fam1():
    return make_family(1)


@pytest.fixture(scope="module")
def arc1(fam1):
    return continue_arc(fam1, step_size=1e-3, max_steps=600, direction=1)


# ----------------------------------------------------------------------
# curve analysis


def test_analyze_curve_closed_forms(fam1):
    analysis = analyze_curve(fam1)
    assert analysis.rank == 2
    assert analysis.kernel_basis == (Fraction(12), Fraction(-39), Fraction(12))
    assert analysis.hessian_on_kernel == 648
    assert analysis.local_coordinate_verdicts == {
        "tr_m1": True,
        "tr_m2": True,
        "tr_m1l1": False,
    }
    # the kernel really is annihilated by the exact Jacobian
    for row in analysis.jacobian:
        assert sum(r * k for r, k in zip(row, analysis.kernel_basis)) == 0


@pytest.mark.parametrize("n", [2, 3, 7])
def test_analyze_curve_kernel_scaling_matches_closed_form(n):
    analysis = analyze_curve(make_family(n))
    closed = kernel_closed_form(n)
    scale = Fraction(12) / Fraction(closed[0])
    assert analysis.kernel_basis == tuple(Fraction(c) * scale for c in closed)


def test_exact_and_float_jacobians_agree(fam1):
    analysis = analyze_curve(fam1)
    exact = np.array([[float(x) for x in row] for row in analysis.jacobian])
    chi_f = tuple(float(c) for c in fam1.chi)
    floats = np.array(
        [[float(eq.derivative(v).evaluate(*chi_f)) for v in range(3)]
         for eq in fam1.curve_eqs])
    scale = max(1.0, float(np.max(np.abs(exact))))
    assert float(np.max(np.abs(exact - floats))) / scale <= 1e-12


# ----------------------------------------------------------------------
# continuation


def test_arc_base_sample_is_rho_n(fam1, arc1):
    s0 = arc1.samples[0]
    assert s0.t == 0.0
    assert s0.residual == 0.0
    assert s0.character == tuple(float(c) for c in fam1.chi)
    assert s0.longitude_trace == 2.0
    assert s0.det_sign == 0
    assert math.isinf(s0.meridian_trace)
    assert s0.ma.entries() == tuple(float(x) for x in fam1.rho_a.entries())
    assert s0.mb.entries() == tuple(float(x) for x in fam1.rho_b.entries())


def test_arc_time_and_residual_invariants(fam1, arc1):
    ts = [s.t for s in arc1.samples]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    assert all(s.residual <= 1e-10 for s in arc1.samples)
    # every character sits on the curve to 1e-9
    for s in arc1.samples[::20]:
        for eq in fam1.curve_eqs:
            assert abs(float(eq.evaluate(*s.character))) <= 1e-9


def test_arc_pins_freeze_ma_entries(fam1, arc1):
    assert len(arc1.pins) == 2
    assert all(p in (0, 1, 2, 3) for p in arc1.pins)
    frozen = [float(fam1.rho_a.entries()[p]) for p in arc1.pins]
    for s in arc1.samples[:: len(arc1.samples) // 4]:
        got = [s.ma.entries()[p] for p in arc1.pins]
        assert got == frozen


def test_direction_plus_has_det_plus_conjugators(arc1):
    assert all(s.det_sign == 1 for s in arc1.samples[1:])
    assert all(math.isfinite(s.meridian_trace) and s.meridian_trace > 2.0
               for s in arc1.samples[1:])


def test_direction_minus_goes_to_the_negative_class(fam1):
    arc = continue_arc(fam1, step_size=1e-3, max_steps=20, direction=-1)
    s1 = arc.samples[1]
    assert s1.det_sign == -1
    assert math.isnan(s1.meridian_trace)


def test_longitude_trace_moves_off_two(arc1):
    for s in arc1.samples[1:]:
        assert s.longitude_trace != 2.0
        assert irreducibility_margin(s) > 0.0
    assert irreducibility_margin(arc1.samples[0]) == 0.0


def test_irreducibility_margin_is_quadratic_with_hessian_coefficient(fam1, arc1):
    analysis = analyze_curve(fam1)
    v = np.array([float(x) for x in analysis.kernel_basis])
    h_on_kernel = float(analysis.hessian_on_kernel)
    chi0 = np.array([float(c) for c in fam1.chi])
    margins, projections = [], []
    for s in arc1.samples[1:9]:
        disp = np.array(s.character) - chi0
        proj = float(disp @ v) / float(v @ v)
        projections.append(abs(proj))
        margins.append(irreducibility_margin(s))
    # leading coefficient: margin ~= (1/2) * (v^T H v) * s^2
    for m, p in zip(margins, projections):
        assert m == pytest.approx(0.5 * h_on_kernel * p * p, rel=5e-3)
    # log-log slope across a decade of s
    slope = (math.log(margins[-1]) - math.log(margins[0])) / (
        math.log(projections[-1]) - math.log(projections[0]))
    assert 1.9 <= slope <= 2.1


def test_step_halving_is_second_order(fam1):
    coarse = continue_arc(fam1, step_size=2e-3, max_steps=60, direction=1)
    fine = continue_arc(fam1, step_size=1e-3, max_steps=120, direction=1)
    for k in range(1, 61):
        gap = max(abs(a - b) for a, b in
                  zip(coarse.samples[k].character, fine.samples[2 * k].character))
        assert gap <= 10 * (2e-3) ** 2


def test_longitude_path_satisfies_continuity_guard(arc1):
    longs = arc1.longitude_images()
    for a, b in zip(longs, longs[1:]):
        assert frobenius_distance(a, b) < 0.5


def test_trace_ceiling_terminates_immediately_when_low(fam1):
    arc = continue_arc(fam1, step_size=1e-3, max_steps=50, direction=1,
                       trace_ceiling=50.0)
    assert arc.termination_reason == "meridianTraceCeiling"
    assert len(arc.samples) == 2  # t=0 plus the first sample above the ceiling
    assert arc.samples[1].meridian_trace > 50.0


def test_class_change_detected_on_the_loop_side(fam1):
    # the -1 side loops back to the limiting character (a node); crossing it
    # the corrector lands on the determinant-+1 branch and the arc stops
    arc = continue_arc(fam1, step_size=1e-3, max_steps=7500, direction=-1)
    assert arc.termination_reason == "classChange"
    signs = [s.det_sign for s in arc.samples[1:]]
    assert signs[0] == -1 and signs[-1] == 1
    assert all(s == -1 for s in signs[:-1])


def test_invalid_arguments_are_rejected(fam1):
    with pytest.raises(ValueError):
        continue_arc(fam1, step_size=1e-7)
    with pytest.raises(ValueError):
        continue_arc(fam1, step_size=1.0)
    with pytest.raises(ValueError):
        continue_arc(fam1, direction=0)
    with pytest.raises(ValueError):
        continue_arc(fam1, max_steps=-1)


def test_zero_steps_returns_base_sample_only(fam1):
    arc = continue_arc(fam1, max_steps=0)
    assert len(arc.samples) == 1
    assert arc.termination_reason == "maxSteps"


# ----------------------------------------------------------------------
# gluing


def test_glue_hnn_on_accepted_samples(fam1, arc1):
    for s in (arc1.samples[1], arc1.samples[100], arc1.samples[-1]):
        glued = glue_hnn(s, fam1)
        assert not glued.underdetermined
        assert glued.relation_residual <= 1e-8
        assert glued.longitude_commutation_residual <= 1e-8
        assert glued.t_letter.det() == pytest.approx(1.0, abs=1e-9)
        assert glued.t_letter.trace() >= 0.0
        im1 = evaluate(fam1.m1, s.ma, s.mb)
        im2 = evaluate(fam1.m2, s.ma, s.mb)
        moved = glued.t_letter @ im1 @ glued.t_letter.inverse()
        assert frobenius_distance(moved, im2) <= 1e-6


def test_glue_hnn_rejects_the_base_sample(fam1, arc1):
    with pytest.raises(GluingError):
        glue_hnn(arc1.samples[0], fam1)


def test_glue_hnn_rejects_negative_class(fam1):
    arc = continue_arc(fam1, step_size=1e-3, max_steps=5, direction=-1)
    with pytest.raises(GluingError):
        glue_hnn(arc.samples[1], fam1)


def test_glue_hnn_single_pair_is_underdetermined(fam1, arc1):
    s = arc1.samples[50]
    im1 = evaluate(fam1.m1, s.ma, s.mb)
    im2 = evaluate(fam1.m2, s.ma, s.mb)
    glued = glue_hnn(s, fam1, pairs=((im1, im2),))
    assert glued.underdetermined


def test_rank_gate_raises_for_degenerate_input():
    fam = make_family(1)
    bad = type(fam)(
        n=fam.n, m1=fam.m1, m2=fam.m2, l1=fam.l1, l2=fam.l2,
        longitude=fam.longitude, rho_a=fam.rho_a, rho_b=fam.rho_b,
        chi=fam.chi,
        curve_eqs=(fam.curve_eqs[0], fam.curve_eqs[0], fam.curve_eqs[0]))
    with pytest.raises(ContinuationError):
        continue_arc(bad)
