import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subordkit import admissibility as adm
from subordkit.admissibility import (GridSpec, OperatorCoefficients, base_quantities, estimate_min_gap,
                                     get_theorem, make_point, proof_lower_bound, threshold_holds,
                                     verify_exclusion, xi_value)
from subordkit.domains import solve_r0
from subordkit.errors import ParameterOrder

E = math.e
SMALL = GridSpec(n_theta=512)


def test_base_quantities_examples():
    bq = base_quantities(0.0)
    assert (bq.b, bq.l, bq.hq) == pytest.approx((E, 1, 1), abs=1e-15)
    bq = base_quantities(math.pi)
    assert (bq.b, bq.l, bq.hq) == pytest.approx((1 / E, -1, 1), abs=1e-15)
    bq = base_quantities(math.pi / 2)
    assert (bq.b, bq.l, bq.hq) == pytest.approx((1, 0, -1), abs=1e-15)


def test_make_point_examples():
    p = make_point(math.pi, 1)
    assert p.r == pytest.approx(1 / E, abs=1e-12)
    assert p.s == pytest.approx(-1 / E, abs=1e-12)
    assert p.t == pytest.approx(1 / E, abs=1e-12)
    p = make_point(0.0, 1)
    assert p.s == pytest.approx(E) and p.t == pytest.approx(E)
    p = make_point(math.pi / 2, 2, 2, order=3)
    assert p.u / p.s == pytest.approx(-4, abs=1e-12)


def test_make_point_rejects_bad_parameters():
    with pytest.raises(ParameterOrder):
        make_point(0.0, 0.5)
    with pytest.raises(ParameterOrder):
        make_point(0.0, 3, 2, order=3)
    with pytest.raises(ValueError):
        make_point(0.0, 1, t_slack=-1)


def test_xi_value_examples():
    c = OperatorCoefficients(1, 0.001)
    assert xi_value(c, make_point(math.pi, 1)) == pytest.approx(1 - 1 / E + 0.001 / E, abs=1e-14)
    c = OperatorCoefficients(E * (E - 1) + 0.01, 0.001)
    assert abs(xi_value(c, make_point(math.pi, 1)) - 1) >= E - 1
    with pytest.raises(ValueError):
        xi_value(OperatorCoefficients(1, 1, 1), make_point(0.0, 1))


def test_proof_lower_bound_examples():
    a1, a2 = 3.0, 0.4
    c = OperatorCoefficients(a1, a2)
    assert proof_lower_bound(c, math.pi, 1) == pytest.approx((a1 - a2) / E)
    assert proof_lower_bound(OperatorCoefficients(5, 1), 0.0, 1) == pytest.approx(6 * E)
    want = 2 * 5 / E * (1 + (1 / 5) * (-2 + 1) + (0.1 / 5) * (4 * 1 + 6 * (-1)))
    assert proof_lower_bound(OperatorCoefficients(5, 1, 0.1), math.pi, 2, 2) == pytest.approx(want)


def test_threshold_examples():
    assert threshold_holds(get_theorem("T4.1", 1, 0), OperatorCoefficients(3, 0.2))
    assert threshold_holds(get_theorem("T4.8"), OperatorCoefficients(4.7, 0.01))
    t42 = get_theorem("T4.2")
    d = E * (1 + math.sqrt(2))
    assert not threshold_holds(t42, OperatorCoefficients(d - 0.01 + 0.1, 0.1))
    assert threshold_holds(t42, OperatorCoefficients(d + 0.01 + 0.1, 0.1))


def test_threshold_constants():
    assert get_theorem("T4.3").minimal_gap == pytest.approx(E * solve_r0())
    assert get_theorem("T4.3").minimal_gap == pytest.approx(0.546302 * E, abs=1e-5)
    assert get_theorem("T5.6").minimal_gap == pytest.approx(E * E)
    assert get_theorem("T4.2").minimal_gap == pytest.approx(E * (1 + math.sqrt(2)))


def test_janowski_threshold_forms_agree():
    # (C-D)(1+|D|)/(1-D^2) equals |D|(C-D)/(1-D^2) + (C-D)/(1-D^2)
    rng = np.random.default_rng(4)
    for _ in range(200):
        D = rng.uniform(-0.99, 0.9)
        C = rng.uniform(D + 1e-3, 1.0)
        spec = get_theorem("T4.1", C, D)
        alt = abs(D) * (C - D) / (1 - D * D) + (C - D) / (1 - D * D)
        assert spec.proof_constant == pytest.approx(alt, rel=1e-14)


def test_get_theorem_errors():
    with pytest.raises(ValueError):
        get_theorem("T6.1")
    with pytest.raises(ValueError):
        get_theorem("T4.1")
    assert get_theorem("t5.3").order == 3


def test_coefficient_validation():
    with pytest.raises(ValueError):
        OperatorCoefficients(0, 1)
    with pytest.raises(ValueError):
        OperatorCoefficients(1, 1, -1)
    assert OperatorCoefficients(1, 1).order == 2
    assert OperatorCoefficients(1, 1, 0.1).order == 3


def test_verify_exclusion_examples():
    rep = verify_exclusion(get_theorem("T4.8"), OperatorCoefficients(E * (E - 1) + 1e-6, 1e-6), SMALL)
    assert rep.status == "PASS" and rep.min_margin >= -1e-9
    assert rep.argmin["theta"] == pytest.approx(math.pi, abs=2 * math.pi / 512)
    assert rep.argmin["m"] == 1

    rep = verify_exclusion(get_theorem("T4.4"), OperatorCoefficients(math.sqrt(2) * E + 0.1, 0.05), SMALL)
    assert rep.status == "PASS" and rep.min_modulus >= math.sqrt(2)

    rep = verify_exclusion(get_theorem("T5.6"), OperatorCoefficients(E * E + 2, 0.5, 0.1),
                           GridSpec(n_theta=512, m_values=(2.0,)), 2, 2)
    assert rep.status == "PASS" and rep.min_modulus >= E


def test_verify_exclusion_advisory_and_order_mismatch():
    rep = verify_exclusion(get_theorem("T4.8"), OperatorCoefficients(1, 0.5), SMALL)
    assert rep.status == "ADVISORY" and not rep.threshold_holds
    with pytest.raises(ValueError):
        verify_exclusion(get_theorem("T5.8"), OperatorCoefficients(10, 1), SMALL)


def test_third_order_pairs_follow_hypothesis():
    spec = get_theorem("T5.8")
    c = spec.coefficients_at(1e-3)
    rep = verify_exclusion(spec, c, SMALL, 2, 2)
    assert [2.0, 2.0] in rep.pairs
    for m, k in rep.skipped_pairs:
        assert not threshold_holds(spec, c, m, k)


def test_estimate_min_gap_examples():
    spec = get_theorem("T4.8")
    at = estimate_min_gap(spec, OperatorCoefficients(E * (E - 1) + 0.01, 0.01))
    assert abs(at) <= 1e-3
    assert estimate_min_gap(spec, OperatorCoefficients(E * (E - 1) + 1.01, 0.01)) > 0
    assert estimate_min_gap(spec, OperatorCoefficients(1.01, 0.01)) < 0


def test_find_threshold_brackets_proof_value():
    out = adm.find_threshold(get_theorem("T4.8"), containment=False, grid=SMALL)
    assert 0 < out["empirical_gap_threshold"] <= E * (E - 1) + 1e-3
    out = adm.find_threshold(get_theorem("T4.4"), containment=False, grid=SMALL)
    assert out["empirical_gap_threshold"] <= math.sqrt(2) * E + 1e-3


def test_containment_threshold_below_proof_threshold():
    out = adm.find_threshold(get_theorem("T4.8"), grid=SMALL)
    assert out["containment_threshold"] <= out["empirical_gap_threshold"]


# -- properties ----------------------------------------------------------

THETA = np.linspace(0, 2 * np.pi, 10_000)


def test_relaxation_step():
    b, l, _ = adm.base_arrays(THETA)
    assert np.all(b * (1 + l) >= 0)
    rng = np.random.default_rng(2)
    for _ in range(100):
        a2 = rng.uniform(0.01, 5)
        a1 = a2 + rng.uniform(0, 10)
        assert np.min(b * (a1 + a2 * l)) >= (a1 - a2) / E - 1e-12


@settings(max_examples=80, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.01, 5), st.floats(0, 2 * math.pi), st.floats(1, 8),
       st.floats(1e-3, 1))
def test_proof_lower_bound_monotone(a1, a2, theta, m, dm):
    c = OperatorCoefficients(a1, a2)
    bq = base_quantities(theta)
    if bq.l >= 0:
        assert proof_lower_bound(c, theta, m + dm) >= proof_lower_bound(c, theta, m) - 1e-12
    bigger = OperatorCoefficients(a1 + dm, a2)
    assert proof_lower_bound(bigger, theta, m) >= proof_lower_bound(c, theta, m) - 1e-12


@settings(max_examples=80, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.01, 5), st.floats(0, 1), st.floats(0, 2 * math.pi),
       st.floats(2, 8), st.floats(0, 4), st.booleans())
def test_modulus_exceeds_real_part_bound(a1, a2, a3, theta, m, dk, third):
    if third and a3 > 0:
        c, k, order = OperatorCoefficients(a1, a2, a3), m + dk, 3
    else:
        c, k, order = OperatorCoefficients(a1, a2), None, 2
    pt = make_point(theta, m, k, order=order)
    bound = proof_lower_bound(c, theta, m, k)
    assert abs(xi_value(c, pt) - 1) >= bound - 1e-9 * max(1.0, abs(bound))


def test_argmin_at_pi_for_m_one():
    b, l, _ = adm.base_arrays(THETA)
    a1, a2 = 5.0, 0.5
    chain = b * (a1 + a2 * l)
    assert THETA[np.argmin(chain)] == pytest.approx(math.pi, abs=2 * math.pi / 10_000)


@pytest.mark.parametrize("tid", adm.THEOREM_IDS)
def test_threshold_is_tight_for_coefficients_at(tid):
    spec = get_theorem(tid, 1, 0)
    above = spec.coefficients_at(1e-6)
    below = spec.coefficients_at(-1e-3)
    assert threshold_holds(spec, above)
    assert not threshold_holds(spec, below)
