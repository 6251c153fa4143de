from __future__ import annotations

import numpy as np
import pytest

from pwldyn import (
    EmptyCloud,
    PwlMap,
    attractor,
    default_x0,
    detect_shared_eigenvalue,
    hausdorff,
    scan,
)

from conftest import SHARED_2D


def test_default_x0(shared_map):
    x0 = default_x0(shared_map)
    assert x0 == pytest.approx([1.0, 0.001])


def test_attractor_sits_on_invariant_plane(shared_map):
    red = detect_shared_eigenvalue(shared_map)
    cloud = attractor(shared_map, default_x0(shared_map))
    assert cloud.points.shape == (3000, 2)
    assert not cloud.escaped
    dev = red.deviation_many(cloud.points)
    assert np.abs(dev).max() <= 1e-8


def test_attractor_contracting_map():
    half = 0.5 * np.eye(2)
    pwl = PwlMap(half, half, np.array([0.25, 0.0]), np.array([1.0, 0.0]))
    cloud = attractor(pwl, np.array([3.0, -2.0]), n_transient=200, n_keep=100)
    spread = cloud.points.max(axis=0) - cloud.points.min(axis=0)
    assert spread.max() <= 1e-10
    assert cloud.points[0] == pytest.approx([0.5, 0.0], abs=1e-10)


def test_hausdorff_frozen_values():
    a = np.array([[0.0, 0.0]])
    b = np.array([[1.0, 0.0]])
    assert hausdorff(a, a) == 0.0
    assert hausdorff(a, b) == pytest.approx(1.0, abs=1e-15)
    c = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert hausdorff(a, c) == pytest.approx(2.0, abs=1e-15)
    assert hausdorff(c, a) == pytest.approx(2.0, abs=1e-15)


def test_hausdorff_metric_properties(rng):
    for _ in range(20):
        a = rng.standard_normal((40, 3))
        b = rng.standard_normal((50, 3))
        c = rng.standard_normal((30, 3))
        dab = hausdorff(a, b)
        dba = hausdorff(b, a)
        assert dab == pytest.approx(dba, abs=1e-12)
        assert dab >= 0.0
        assert hausdorff(a, a) == 0.0
        assert dab <= hausdorff(a, c) + hausdorff(c, b) + 1e-12


def test_hausdorff_accepts_clouds(shared_map):
    cloud = attractor(shared_map, default_x0(shared_map), n_transient=500, n_keep=200)
    assert hausdorff(cloud, cloud.points) == 0.0


def test_hausdorff_empty():
    with pytest.raises(EmptyCloud):
        hausdorff(np.zeros((0, 2)), np.zeros((1, 2)))


def test_scan_bounded_family():
    result = scan(SHARED_2D, "tl", [2.0, 2.2, 2.4])
    assert result.parameter == "tl"
    assert result.values == (2.0, 2.2, 2.4)
    assert len(result.clouds) == 3
    for cloud, err in zip(result.clouds, result.errors):
        assert err is None
        assert cloud is not None
        assert not cloud.escaped
        assert cloud.points.shape == (3000, 2)
    assert len(result.consecutive_hausdorff) == 2
    assert all(np.isfinite(d) and d < 1.0 for d in result.consecutive_hausdorff)


def test_scan_determinant_family():
    from pwldyn import BcnfParams

    base = BcnfParams(dim=2, tl=1.3, dl=0.0, tr=-1.4, dr=1.5)
    result = scan(base, "dl", [-0.08, 0.0, 0.08])
    for cloud, err in zip(result.clouds, result.errors):
        assert err is None
        assert not cloud.escaped
        assert cloud.points.shape == (3000, 2)
    assert all(np.isfinite(d) and d < 1.0 for d in result.consecutive_hausdorff)


def test_scan_single_value():
    result = scan(SHARED_2D, "tl", [2.2])
    assert result.consecutive_hausdorff == ()


def test_scan_escaping_family():
    from pwldyn import BcnfParams

    base = BcnfParams(dim=2, tl=3.0, dl=-4.0, tr=3.0, dr=-4.0)
    result = scan(base, "tl", [3.0, 3.1])
    for cloud in result.clouds:
        assert cloud is not None
        assert cloud.escaped
        assert cloud.points.shape[0] == 0
    assert all(np.isnan(d) for d in result.consecutive_hausdorff)


def test_scan_rejects_bad_parameter():
    with pytest.raises(ValueError):
        scan(SHARED_2D, "sl", [0.1])
    with pytest.raises(ValueError):
        scan(SHARED_2D, "mu", [0.1])


def test_scan_deterministic():
    r1 = scan(SHARED_2D, "dr", [-0.4, -0.3])
    r2 = scan(SHARED_2D, "dr", [-0.4, -0.3])
    for c1, c2 in zip(r1.clouds, r2.clouds):
        assert np.array_equal(c1.points, c2.points)
    assert r1.consecutive_hausdorff == r2.consecutive_hausdorff


def test_scan_refinement_tightens_steps():
    # Halving the parameter step should not increase the largest gap
    # between consecutive attractor clouds.
    maxima = []
    for count in (5, 9, 17):
        values = np.linspace(2.1, 2.3, count)
        result = scan(SHARED_2D, "tl", values)
        assert all(e is None for e in result.errors)
        maxima.append(max(result.consecutive_hausdorff))
    assert maxima[1] <= maxima[0] + 1e-12
    assert maxima[2] <= maxima[1] + 1e-12
