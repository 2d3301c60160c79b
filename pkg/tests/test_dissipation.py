import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from doublejc.dissipation import (DEAD_TOL, atomic_entanglement_margin, death_revival_scan,
                                  jc_to_dissipative_time, sudden_death_onset)
from doublejc.entanglement import pairwise_concurrences
from doublejc.model import (DomainError, GenericCoefficients, ModelParams, embed, make_bell_phi,
                            make_bell_psi)
from doublejc.propagator import evolve_closed_form, evolve_trajectory

from oracles import bisect_root, evolve16, partial_trace_loops, wootters_numpy

RES = ModelParams.resonant(1.0, 1.0, 1.0)
# located by bisection on the 16-dim expm pipeline with a numpy Wootters oracle
TAU_PI6_ORACLE = 0.8630603311476531


def test_dissipative_time_examples():
    assert jc_to_dissipative_time(math.pi / 3, 1.0, 1.0) == pytest.approx(math.log(4), abs=1e-12)
    assert jc_to_dissipative_time(math.pi / 4, 1.0, 2.0) == pytest.approx(0.346574, abs=1e-6)
    assert jc_to_dissipative_time(0.0, 1.0, 1.0) == 0.0
    assert jc_to_dissipative_time(math.pi / 8, 2.0, 1.0) == pytest.approx(math.log(2), abs=1e-12)


@given(st.floats(0, 1.5), st.floats(0.1, 10), st.floats(0.1, 10))
def test_dissipative_round_trip(x, rabi, gamma):
    t = x / rabi
    tp = jc_to_dissipative_time(t, rabi, gamma)
    assert tp >= 0
    assert math.exp(-gamma * tp) == pytest.approx(math.cos(rabi * t) ** 2, abs=1e-12)


def test_dissipative_monotone():
    ts = np.linspace(0, 1.5, 200)
    tp = [jc_to_dissipative_time(t, 1.0, 1.0) for t in ts]
    assert np.all(np.diff(tp) > 0)


@pytest.mark.parametrize("t, rabi, gamma", [(math.pi / 2, 1.0, 1.0), (-0.1, 1.0, 1.0),
                                            (0.5, 1.0, 0.0), (0.5, 1.0, -1.0), (2.0, 1.0, 1.0)])
def test_dissipative_domain(t, rabi, gamma):
    with pytest.raises(DomainError):
        jc_to_dissipative_time(t, rabi, gamma)


def test_onset_values():
    assert sudden_death_onset(math.pi / 6, 1.0) == pytest.approx(TAU_PI6_ORACLE, abs=1e-6)
    assert sudden_death_onset(math.pi / 6, 1.0) == pytest.approx(
        math.asin(math.sqrt(math.tan(math.pi / 6))), abs=1e-15)
    assert sudden_death_onset(0.0, 1.0) == 0.0
    assert sudden_death_onset(math.pi / 4, 1.0) is None
    assert sudden_death_onset(math.pi / 3, 1.0) is None
    assert sudden_death_onset(math.pi / 6, 2.0) == pytest.approx(TAU_PI6_ORACLE / 2, abs=1e-6)


def test_onset_domain():
    for a, r in ((-0.1, 1.0), (2.0, 1.0), (0.3, 0.0)):
        with pytest.raises(DomainError):
            sudden_death_onset(a, r)


def test_onset_against_brute_force():
    # expm pipeline + textbook Wootters, bisected independently of the package
    def conc(t):
        amp = evolve16(embed(make_bell_phi(math.pi / 6)).amp, RES, t)
        return wootters_numpy(partial_trace_loops(amp, "AB")) - 1e-9

    root = bisect_root(conc, 0.5, 1.0, tol=1e-12)
    assert root == pytest.approx(sudden_death_onset(math.pi / 6, 1.0), abs=1e-6)


def test_scan_phi_pi6():
    rep = death_revival_scan(make_bell_phi(math.pi / 6), RES, 2 * math.pi, n_samples=1000)
    tau = sudden_death_onset(math.pi / 6, 1.0)
    assert len(rep.death_times) == 2 and len(rep.revival_times) == 2
    assert rep.death_times[0] == pytest.approx(tau, abs=1e-6)
    assert rep.revival_times[0] == pytest.approx(2.27853232244256, abs=1e-6)
    assert rep.revival_times[0] == pytest.approx(math.pi - tau, abs=1e-6)
    assert rep.death_times_dissipative == pytest.approx(
        [jc_to_dissipative_time(tau, 1.0, 1.0)], abs=1e-6)


def test_dead_zone_exact_zero_and_alive_outside():
    tau = sudden_death_onset(math.pi / 6, 1.0)
    c = make_bell_phi(math.pi / 6)
    inside = np.linspace(tau + 1e-6, math.pi - tau - 1e-6, 300)
    for row in evolve_trajectory(c, RES, inside):
        assert pairwise_concurrences(embed(GenericCoefficients.from_array(row))).c_AB == 0.0
    outside = np.concatenate([np.linspace(0, tau - 1e-4, 50),
                              np.linspace(math.pi - tau + 1e-4, math.pi, 50)])
    for row in evolve_trajectory(c, RES, outside):
        assert pairwise_concurrences(embed(GenericCoefficients.from_array(row))).c_AB > 0


@pytest.mark.parametrize("make, alpha", [(make_bell_psi, math.pi / 4), (make_bell_psi, 0.3),
                                         (make_bell_phi, math.pi / 3),
                                         (make_bell_phi, math.pi / 4)])
def test_no_death_before_half_period(make, alpha):
    rep = death_revival_scan(make(alpha), RES, math.pi / 2 - 1e-3, n_samples=500)
    assert rep.death_times == []


def test_margin_sign_matches_concurrence():
    c = make_bell_phi(math.pi / 6)
    for t in np.linspace(0, math.pi, 40):
        ev = evolve_closed_form(c, RES, t)
        m = atomic_entanglement_margin(ev)
        assert max(0.0, 2 * m) == pytest.approx(pairwise_concurrences(embed(ev)).c_AB, abs=1e-12)


def test_scan_zero_alpha_dies_immediately():
    rep = death_revival_scan(make_bell_phi(0.0), RES, math.pi / 2, n_samples=200)
    # a product state: no entanglement to lose beyond the threshold
    assert all(t < 1e-6 for t in rep.death_times)
    assert DEAD_TOL < 1e-12


def test_scan_errors():
    c = make_bell_phi(math.pi / 6)
    with pytest.raises(DomainError):
        death_revival_scan(c, RES, 1.0, n_samples=10)
    with pytest.raises(DomainError):
        death_revival_scan(c, RES, 0.0)
