import json
import math

import numpy as np
import pytest

from opident.radon import (
    Ellipse,
    Phantom,
    Sinogram,
    check_evenness,
    demo_phantom,
    disk,
    evenness_report,
    fourier_leakage,
    moments_direct,
    moments_from_sinogram,
    phantom_from_csv,
    phantom_make,
    phantom_to_csv,
    radon_forward,
    range_check,
    sinogram_from_csv,
    sinogram_to_csv,
)


GRID = 128
ANGLES = 90
OFFSETS = 91


@pytest.fixture(scope="module")
def centered():
    p = phantom_make([disk((0, 0), 1.0)], GRID, GRID, 1.5)
    return p, radon_forward(p, ANGLES, OFFSETS, 0.0)


@pytest.fixture(scope="module")
def off_center():
    p = phantom_make([disk((0.3, 0), 1.0)], GRID, GRID, 1.5)
    g0 = radon_forward(p, ANGLES, OFFSETS, 0.0)
    gm = radon_forward(p, ANGLES, OFFSETS, 0.5)
    return p, g0, gm


# -- phantom ------------------------------------------------------------------

def test_unit_disk_mass(centered):
    p, _ = centered
    assert abs(p.mass() - math.pi) / math.pi < 0.01


def test_empty_phantom_is_zero():
    p = phantom_make([], 32, 32, 1.0)
    assert not p.grid.any()


def test_two_disjoint_disks_add_mass():
    p = phantom_make(
        [disk((-0.6, 0), 0.3), disk((0.6, 0.2), 0.45, value=2.0)], 256, 256, 1.5
    )
    expected = math.pi * 0.3 ** 2 + 2.0 * math.pi * 0.45 ** 2
    assert abs(p.mass() - expected) / expected < 0.01


def test_phantom_rejects_small_grid():
    with pytest.raises(ValueError):
        phantom_make([], 8, 32, 1.0)


def test_phantom_rejects_shape_touching_extent():
    with pytest.raises(ValueError):
        phantom_make([disk((0.5, 0), 0.6)], 64, 64, 1.0)


def test_rotated_ellipse_mass():
    e = Ellipse((0.2, -0.1), (0.8, 0.3), rotation=0.7, value=1.5)
    p = phantom_make([e], 256, 256, 1.5)
    expected = 1.5 * math.pi * 0.8 * 0.3
    assert abs(p.mass() - expected) / expected < 0.01


# -- forward transform -----------------------------------------------------------

def test_disk_projection_is_chord_length(centered):
    _, g = centered
    inner = np.abs(g.offsets) <= 0.8
    chord = 2.0 * np.sqrt(np.clip(1.0 - g.offsets[inner] ** 2, 0.0, None))
    err = np.abs(g.values[:, inner] - chord[None, :]) / chord[None, :]
    assert err.max() < 0.02


def test_disk_exponential_projection(centered):
    p, _ = centered
    mu = 0.7
    g = radon_forward(p, 45, OFFSETS, mu)
    inner = np.abs(g.offsets) <= 0.8
    half = np.sqrt(np.clip(1.0 - g.offsets[inner] ** 2, 0.0, None))
    expected = 2.0 * np.sinh(mu * half) / mu
    err = np.abs(g.values[:, inner] - expected[None, :]) / expected[None, :]
    assert err.max() < 0.02


def test_zero_phantom_projects_to_zero():
    p = phantom_make([], 32, 32, 1.0)
    g = radon_forward(p, 16, 17, 0.3)
    assert not g.values.any()


def test_negative_mu_rejected(centered):
    p, _ = centered
    with pytest.raises(ValueError):
        radon_forward(p, 8, 9, -0.1)


def test_linearity():
    pa = phantom_make([disk((0.2, 0), 0.5)], 64, 64, 1.5)
    pb = phantom_make([disk((-0.3, 0.1), 0.4, value=0.7)], 64, 64, 1.5)
    combined = Phantom(2.0 * pa.grid + pb.grid, 1.5, ())
    ga = radon_forward(pa, 30, 31, 0.0)
    gb = radon_forward(pb, 30, 31, 0.0)
    gc = radon_forward(combined, 30, 31, 0.0)
    assert np.abs(gc.values - 2.0 * ga.values - gb.values).max() < 1e-12


def test_rotation_equivariance():
    delta = 2.0 * math.pi / 60
    p1 = phantom_make([disk((0.3, 0), 0.5)], 128, 128, 1.5)
    p2 = phantom_make(
        [disk((0.3 * math.cos(delta), 0.3 * math.sin(delta)), 0.5)], 128, 128, 1.5
    )
    g1 = radon_forward(p1, 60, 61, 0.0)
    g2 = radon_forward(p2, 60, 61, 0.0)
    shifted = np.roll(g1.values, 1, axis=0)
    assert np.abs(shifted - g2.values).max() / np.abs(g1.values).max() < 0.05


# -- evenness ----------------------------------------------------------------------

def test_evenness_of_forward_data(off_center):
    _, g0, _ = off_center
    assert check_evenness(g0) < 1e-2


def test_evenness_of_symmetric_phantom(centered):
    _, g = centered
    assert check_evenness(g) < 1e-3


def test_evenness_detects_corruption(off_center):
    _, g0, _ = off_center
    bad = g0.values.copy()
    bad[10, 45] += 0.10 * np.abs(g0.values).max()
    corrupted = Sinogram(bad, g0.angles, g0.offsets, 0.0)
    assert check_evenness(corrupted) >= 0.05
    assert evenness_report(corrupted).outcome == "FAIL"


def test_evenness_rejects_attenuated(off_center):
    _, _, gm = off_center
    with pytest.raises(ValueError):
        check_evenness(gm)


def test_evenness_needs_even_angle_count(centered):
    p, _ = centered
    g = radon_forward(p, 15, 31, 0.0)
    with pytest.raises(ValueError):
        check_evenness(g)


# -- moments ------------------------------------------------------------------------

def test_moment_condition_on_monomial_basis():
    # cos^a t sin^b t with a+b = k is the circle restriction of the
    # homogeneous monomial x^a y^b: its spectrum stays in the allowed modes
    t = 2.0 * np.pi * np.arange(360) / 360
    for k in range(5):
        for a in range(k + 1):
            curve = np.cos(t) ** a * np.sin(t) ** (k - a)
            assert fourier_leakage(curve, k) < 1e-20


def test_moment_condition_rejects_forbidden_modes():
    t = 2.0 * np.pi * np.arange(360) / 360
    assert fourier_leakage(np.cos(3 * t), 2) > 0.99  # frequency too high
    assert fourier_leakage(np.cos(t), 2) > 0.99  # parity mismatch
    assert fourier_leakage(np.zeros(360), 3) == 0.0


def test_disk_moments_from_sinogram(centered):
    _, g = centered
    table = moments_from_sinogram(g, 2)
    assert np.abs(table.moments[0] - math.pi).max() < 0.02
    assert table.leakage[0] < 1e-3
    assert np.abs(table.moments[1]).max() < 1e-12
    assert np.abs(table.moments[2] - math.pi / 4).max() < 0.02


def test_disk_moments_direct(centered):
    p, _ = centered
    table = moments_direct(p, 2, ANGLES)
    assert abs(table.moments[0][0] - math.pi) / math.pi < 0.01
    assert np.abs(table.moments[1]).max() < 1e-12
    assert np.abs(table.moments[2] - math.pi / 4).max() < 0.01


def test_off_center_first_moment_is_cosine(off_center):
    p, _, _ = off_center
    table = moments_direct(p, 1, ANGLES)
    angles = 2.0 * np.pi * np.arange(ANGLES) / ANGLES
    expected = p.mass() * 0.3 * np.cos(angles)
    assert np.abs(table.moments[1] - expected).max() < 0.01 * p.mass()


def test_sinogram_vs_direct_moments(off_center):
    p, g0, _ = off_center
    sino = moments_from_sinogram(g0, 4)
    direct = moments_direct(p, 4, ANGLES)
    scale = max(p.mass(), max(np.abs(direct.moments[k]).max() for k in range(5)))
    worst = max(
        np.abs(sino.moments[k] - direct.moments[k]).max() / scale for k in range(5)
    )
    assert worst < 2e-2


# -- range checks ----------------------------------------------------------------------

def test_range_check_classical_passes(off_center):
    p, g0, _ = off_center
    rep = range_check(g0, 4, p)
    assert rep.outcome == "PASS" and rep.ok


def test_range_check_attenuated_leaks(off_center):
    p, g0, gm = off_center
    rep = range_check(gm, 4, p, baseline=g0)
    assert rep.outcome == "PASS" and rep.ok
    k = str(rep.params["best_k"])
    assert rep.params["leakage"][k] >= 10.0 * rep.params["baseline_leakage"][k]


def test_range_check_zero_sinogram_passes():
    p = phantom_make([], 32, 32, 1.0)
    g = radon_forward(p, 16, 17, 0.0)
    rep = range_check(g, 3, p)
    assert rep.outcome == "PASS" and rep.ok


def test_range_check_computes_baseline_when_missing(off_center):
    p, _, gm = off_center
    small = radon_forward(p, 30, 31, 0.5)
    rep = range_check(small, 2, p)
    assert rep.outcome == "PASS"


# -- serialization -----------------------------------------------------------------------

def test_sinogram_csv_round_trip(off_center):
    _, g0, _ = off_center
    text = sinogram_to_csv(g0)
    assert text.splitlines()[0] == f"# {ANGLES} {OFFSETS} 1.5 0"
    back = sinogram_from_csv(text)
    assert np.array_equal(back.values, g0.values)
    assert back.mu == g0.mu
    assert np.allclose(back.offsets, g0.offsets)


def test_phantom_csv_round_trip(centered):
    p, _ = centered
    back = phantom_from_csv(phantom_to_csv(p))
    assert np.array_equal(back.grid, p.grid)
    assert back.extent == p.extent


def test_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        phantom_from_csv("1,2\n3,4\n")


def test_csv_17_digit_precision():
    grid = np.array([[1.0 / 3.0]])
    p = Phantom(grid, 1.0, ())
    text = phantom_to_csv(p)
    assert "0.33333333333333331" in text


def test_moment_table_json(centered):
    _, g = centered
    table = moments_from_sinogram(g, 2)
    payload = json.loads(table.to_json())
    assert set(payload) == {"moments", "leakage"}
    assert set(payload["moments"]) == {"0", "1", "2"}
    assert len(payload["moments"]["0"]) == ANGLES
    assert payload["leakage"]["0"] < 1e-3


def test_demo_phantom_is_off_center_unit_disk():
    p = demo_phantom(64, 64, 1.5)
    assert p.shapes == (disk((0.3, 0.0), 1.0),)
    assert abs(p.mass() - math.pi) / math.pi < 0.01
