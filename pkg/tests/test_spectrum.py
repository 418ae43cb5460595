from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgbound.errors import SWaveOnlyError, UnsupportedModelError, WindowError
from kgbound.potentials import (EckartType, Hulthen, RosenMorseType, RosenMorseWell, StandardEckart,
                                TrigRosenMorse, WoodsSaxon, dimensional_numbers, family_of)
from kgbound.spectrum import (COMPLEX_WINDOW, KG_LIMIT_2V, SCHRODINGER_V, BoundState, ScanConfig,
                              classify_branch, energy_residual, find_bound_states, nonrelativistic_energy,
                              nonrelativistic_exponents)
from kgbound.tables import BLOCKS, compute_row, row_matches

S3 = dimensional_numbers(3, 0)
TABLE_MODEL = RosenMorseWell(1.0, -1.0, 1.0, 1.0)
ROWS = [(b, n) for b in BLOCKS for n in sorted(b.rows)]


def _quadratic_roots(a, b, c):
    d = math.sqrt(b * b - 4 * a * c)
    return sorted([(-b + d) / (2 * a), (-b - d) / (2 * a)])


@pytest.mark.parametrize("block, n", ROWS, ids=[f"block{b.index}-n{n}" for b, n in ROWS])
def test_reference_rows(block, n):
    got = compute_row(block, n)
    assert row_matches(got, block.rows[n]), (got, block.rows[n])


def test_missing_entries_mean_no_roots():
    assert len(compute_row(BLOCKS[0], 2)) == 2


def test_residual_at_tabulated_value():
    assert abs(energy_residual(TABLE_MODEL, 1, S3, 1, 4.0, 1.8137)) < 1e-3


def test_free_model_has_no_states():
    assert find_bound_states(EckartType(0.0, 0.0, 0.0), 0, S3) == []
    assert find_bound_states(RosenMorseType(0.0, 0.0, 0.0), 1, S3) == []


@pytest.mark.parametrize("n, D, l", [(0, 3, 0), (2, 3, 1), (1, 5, 2)])
def test_free_hulthen_residual(n, D, l):
    dn = dimensional_numbers(D, l)
    M, a = 1.0, 0.3
    nu = (D + 2 * l - 1) / 2
    E = math.sqrt(M * M - a * a * (n + nu) ** 2 / 4)
    assert abs(energy_residual(Hulthen(0.0, a), n, dn, 1, M, E)) < 1e-14


def test_woods_saxon_roots_match_quadratics():
    states = find_bound_states(WoodsSaxon(0.1, 1.0), 1, S3, (1, -1), 1.0)
    plus = sorted(b.E for b in states if b.sign_branch == 1)
    minus = sorted(b.E for b in states if b.sign_branch == -1)
    # sqrt(1 - E^2) = 0.5 + 0.1 (E +- 1), squared
    assert plus == pytest.approx(_quadratic_roots(1.01, 0.12, -0.64), abs=1e-10)
    assert minus == pytest.approx(_quadratic_roots(1.01, 0.08, -0.84), abs=1e-10)
    assert plus == pytest.approx([-0.85765, 0.73884], abs=1e-5)


def test_hulthen_roots_are_a_subset_of_the_generic_route():
    M, V0, a = 1.0, 0.25, 0.25
    own = find_bound_states(Hulthen(V0, a), 0, S3, (1, -1), M)
    generic = find_bound_states(EckartType(0.0, 0.0, V0, 1.0, a / 2), 0, S3, (1, -1), M)
    assert own
    for b in own:
        twin = [g for g in generic if g.sign_branch == b.sign_branch and abs(g.E - b.E) < 1e-9]
        assert len(twin) == 1
        assert b.exponents.p == pytest.approx(twin[0].exponents.p, abs=1e-8)
        assert b.exponents.p <= 0
    extra = [g for g in generic if all(abs(g.E - b.E) > 1e-9 for b in own)]
    assert extra and all(g.exponents.p > 0 for g in extra)


def _all_states():
    cases = [(TABLE_MODEL, n, S3, 4.0) for n in range(1, 6)]
    cases += [(EckartType(0.3, 0.6, 0.2, 0.7, 0.4), n, dimensional_numbers(D, l), 1.5)
              for n in (0, 1) for D, l in ((3, 0), (3, 1), (4, 2))]
    cases += [(Hulthen(0.25, 0.25), 0, S3, 1.0), (WoodsSaxon(0.1, 1.0), 1, S3, 1.0),
              (StandardEckart(0.5, 0.5, 0.25), 0, S3, 1.0),
              (TrigRosenMorse(0.5, 1.0, 1.0), 0, S3, 2.0)]
    return cases


def test_returned_states_satisfy_residual_bound():
    scan = ScanConfig()
    seen = 0
    for m, n, dn, M in _all_states():
        for b in find_bound_states(m, n, dn, (1, -1), M, scan):
            res = energy_residual(m, n, dn, b.sign_branch, M, b.E)
            assert abs(res) < 10 * scan.tolerance(M)
            assert abs(b.E) < M
            seen += 1
    assert seen > 20


def test_grid_doubling_keeps_roots():
    for m, n, dn, M in _all_states():
        coarse = find_bound_states(m, n, dn, (1, -1), M, ScanConfig(grid_points=2048))
        fine = find_bound_states(m, n, dn, (1, -1), M, ScanConfig(grid_points=4096))
        tol = ScanConfig().tolerance(M)
        for b in coarse:
            assert any(f.sign_branch == b.sign_branch and abs(f.E - b.E) <= tol for f in fine)


def test_states_sorted_descending():
    Es = [b.E for b in find_bound_states(TABLE_MODEL, 1, S3, (1, -1), 4.0)]
    assert Es == sorted(Es, reverse=True)


def test_signed_exponent_matches_bracket_form():
    # p = -(1/2)[k - X (V2 + V3) / (2 a^2 k)], k = n + w, in family couplings
    for m, n, dn, M in _all_states():
        if isinstance(m, TrigRosenMorse):
            continue
        f = family_of(m)
        for b in find_bound_states(m, n, dn, (1, -1), M):
            k = n + b.exponents.w
            X = b.E + b.sign_branch * M
            bracket = 0.5 * (k - X * (f.V2 + f.V3) / (2 * f.alpha**2 * k))
            assert b.exponents.p == pytest.approx(-bracket, abs=1e-8)


def test_exponents_and_flags_at_table_root():
    b = max(find_bound_states(TABLE_MODEL, 1, S3, (1,), 4.0), key=lambda s: s.E)
    assert b.E == pytest.approx(1.8137, abs=5e-4)
    # the top tabulated root grows at large x: reported, flagged, not dropped
    assert b.exponents.p == pytest.approx(-0.52029, abs=1e-5)
    assert b.exponents.jacobi_alpha == pytest.approx(2 * b.exponents.p)
    assert b.exponents.jacobi_beta == pytest.approx(2 * b.exponents.w - 1)
    assert not b.admissible.p_positive
    assert b.admissible.tau_prime_negative
    assert b.admissible.names() == ["tau_prime_negative"]


def test_decaying_table_state_is_flagged():
    block3 = BLOCKS[2]
    b = max(find_bound_states(block3.model(), 1, S3, (1,), block3.M), key=lambda s: s.E)
    assert b.E == pytest.approx(1.9558, abs=5e-4)
    assert b.admissible.p_positive and b.admissible.full_line_decay


def test_window_and_wave_errors():
    with pytest.raises(WindowError):
        energy_residual(TABLE_MODEL, 1, S3, 1, 4.0, 4.0)
    with pytest.raises(SWaveOnlyError):
        find_bound_states(TABLE_MODEL, 1, dimensional_numbers(3, 1))
    with pytest.raises(ValueError):
        energy_residual(TABLE_MODEL, 1, S3, 0, 4.0, 0.0)
    with pytest.raises(ValueError):
        energy_residual(WoodsSaxon(0.1), 0, S3, 1, 1.0, 0.0)


def test_complex_window_sentinel():
    # 8 X V1 / (q a^2) drives the Eckart w radicand negative
    assert energy_residual(EckartType(-5.0, 0.0, 0.0), 0, S3, 1, 1.0, 0.9) is COMPLEX_WINDOW


def test_scan_config_tolerance_env(monkeypatch):
    monkeypatch.delenv("KG_TOL_ROOT", raising=False)
    assert ScanConfig().tolerance(4.0) == pytest.approx(4e-10)
    assert ScanConfig(tol_root=1e-7).tolerance(4.0) == 1e-7


@pytest.mark.parametrize("E, label", [(1.8137, "particle"), (-3.9088, "antiparticle"), (0.0, "particle")])
def test_classify_branch(E, label):
    b = find_bound_states(TABLE_MODEL, 1, S3, (1,), 4.0)[0]
    assert classify_branch(replace(b, E=E)) == label


@pytest.mark.parametrize("n", [0, 1, 3])
@pytest.mark.parametrize("l", [0, 1])
def test_nr_eckart_with_v1_zero(n, l):
    M, V2, a = 1.3, 0.4, 0.3
    dn = dimensional_numbers(3, l)
    k = n + 0.5 * (1 + math.sqrt(1 + 4 * dn.ll1))
    want = -(a * a * k * k + M * M * V2 * V2 / (a * a * k * k)) / (2 * M)
    got = nonrelativistic_energy(EckartType(0.0, V2, V2, 1.0, a), n, dn, M, SCHRODINGER_V)
    assert got == pytest.approx(want, rel=1e-14)
    if l == 0:
        assert k == n + 1


@pytest.mark.parametrize("n", [1, 2, 4])
def test_nr_rosen_morse_with_v1_zero(n):
    M, V2, a = 1.0, 0.5, 0.25
    want = -(a * a * n * n + 4 * M * M * V2 * V2 / (a * a * n * n)) / (2 * M)
    got = nonrelativistic_energy(RosenMorseWell(0.0, V2, 1.0, a), n, S3, M, KG_LIMIT_2V)
    assert got == pytest.approx(want, rel=1e-14)


def test_nr_woods_saxon():
    assert nonrelativistic_energy(WoodsSaxon(0.05, 1.0), 1, S3, 1.0, KG_LIMIT_2V) == pytest.approx(-0.18)
    assert nonrelativistic_energy(WoodsSaxon(0.05, 1.0), 1, S3, 1.0, SCHRODINGER_V) == pytest.approx(
        -0.5 * 0.55**2)


def test_nr_errors():
    with pytest.raises(UnsupportedModelError):
        nonrelativistic_energy(EckartType(0.0, 0.4, 0.2), 0, S3, 1.0)
    with pytest.raises(UnsupportedModelError):
        nonrelativistic_energy(Hulthen(0.3), 0, S3, 1.0)
    with pytest.raises(ValueError):
        nonrelativistic_energy(EckartType(0.0, 0.4, 0.4), 0, S3, 1.0, "bogus")


def test_nr_exponents_sign():
    ex = nonrelativistic_exponents(RosenMorseWell(0.5, 0.5, 1.0, 0.25), 0, S3, 1.0, KG_LIMIT_2V)
    assert ex.p > 0
    ex = nonrelativistic_exponents(StandardEckart(0.5, 0.5, 0.25), 0, S3, 1.0, SCHRODINGER_V)
    assert ex.p < 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 1.5), st.floats(0.2, 1.0), st.integers(0, 2))
def test_nr_energy_is_below_threshold(V2, a, n):
    E = nonrelativistic_energy(EckartType(0.0, V2, V2, 1.0, a), n, S3, 1.0)
    assert E < 0
    assert np.isfinite(E)


def test_bound_state_is_frozen():
    b = find_bound_states(TABLE_MODEL, 1, S3, (1,), 4.0)[0]
    assert isinstance(b, BoundState)
    with pytest.raises(Exception):
        b.E = 0.0
