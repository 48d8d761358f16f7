"""Both kernel backends must agree with each other and with simple references."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subordkit import kernels
from subordkit.domains import TargetDomain, boundary_samples


def polygon(kind="cardioid", n=1024):
    b = boundary_samples(TargetDomain.named(kind), n)
    return np.ascontiguousarray(b.real), np.ascontiguousarray(b.imag)


def test_horner_backends_agree():
    rng = np.random.default_rng(0)
    c = rng.normal(size=(40, 12)) + 1j * rng.normal(size=(40, 12))
    z = rng.normal(size=30) + 1j * rng.normal(size=30)
    ref = np.array([[np.polyval(row[::-1], zz) for zz in z] for row in c])
    assert np.allclose(kernels.horner_numba(c, z), ref, rtol=1e-12)
    assert np.allclose(kernels.horner_numpy(c, z), ref, rtol=1e-12)


@pytest.mark.parametrize("kind", ["cardioid", "exp", "sine", "crescent"])
def test_crossing_backends_agree(kind):
    bx, by = polygon(kind)
    rng = np.random.default_rng(1)
    px = rng.uniform(-2, 4, 3000)
    py = rng.uniform(-3, 3, 3000)
    ref = kernels.crossing_winding_brute(bx, by, px, py)
    assert np.array_equal(kernels.crossing_winding_numba(bx, by, px, py), ref)
    assert np.array_equal(kernels.crossing_winding_numpy(bx, by, px, py), ref)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 64), st.integers(0, 10_000))
def test_crossing_on_random_star_polygons(n, seed):
    rng = np.random.default_rng(seed)
    ang = np.sort(rng.uniform(0, 2 * np.pi, n))
    rad = rng.uniform(0.3, 1.0, n)
    bx, by = rad * np.cos(ang), rad * np.sin(ang)
    px, py = rng.uniform(-1.2, 1.2, 200), rng.uniform(-1.2, 1.2, 200)
    ref = kernels.crossing_winding_brute(bx, by, px, py)
    assert np.array_equal(kernels.crossing_winding_numba(bx, by, px, py), ref)
    assert np.array_equal(kernels.crossing_winding_numpy(bx, by, px, py), ref)


def test_argument_change_backends_agree():
    bx, by = polygon("cardioid", 2048)
    rng = np.random.default_rng(2)
    px, py = rng.uniform(-1, 4, 500), rng.uniform(-3, 3, 500)
    a_tot, a_near = kernels.argument_change_numba(bx, by, px, py)
    b_tot, b_near = kernels.argument_change_numpy(bx, by, px, py)
    assert np.allclose(a_tot, b_tot, atol=1e-9)
    assert np.allclose(a_near, b_near)
    winding = np.rint(a_tot / (2 * np.pi)).astype(int)
    assert np.array_equal(winding, kernels.crossing_winding_brute(bx, by, px, py))


def test_disable_flag_selects_numpy():
    code = "from subordkit import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, SUBORDKIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
