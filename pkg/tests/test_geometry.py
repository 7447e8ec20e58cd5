import numpy as np
import pytest

from adhocsim.geometry import Domain, canonicalize, distance


def test_distance_345_triangle():
    d = Domain(1000, 1000, periodic=False)
    assert distance((0, 0), (3, 4), d) == 5.0


def test_distance_minimum_image_wrap():
    d = Domain(1000, 1000, periodic=True)
    assert distance((10, 0), (990, 0), d) == 20.0


def test_distance_identity():
    for periodic in (True, False):
        d = Domain(100, 50, periodic)
        assert distance((42.5, 7.0), (42.5, 7.0), d) == 0.0


def test_canonicalize_periodic_wrap():
    d = Domain(1000, 1000, periodic=True)
    assert np.allclose(canonicalize((1004, 0), d), (4, 0))
    assert np.allclose(canonicalize((-5, 0), d), (995, 0))
    assert np.array_equal(canonicalize((500, 500), d), (500, 500))


def test_canonicalize_reflects_on_bounded_domain():
    d = Domain(1000, 1000, periodic=False)
    assert np.allclose(canonicalize((1004, 0), d), (996, 0))
    assert np.allclose(canonicalize((-5, 0), d), (5, 0))
    assert np.array_equal(canonicalize((500, 500), d), (500, 500))


def test_canonicalize_rejects_non_finite():
    d = Domain(10, 10, True)
    for bad in ((np.nan, 0), (np.inf, 0), (0, -np.inf)):
        with pytest.raises(ValueError):
            canonicalize(bad, d)


def test_canonicalize_result_always_in_domain():
    rng = np.random.default_rng(0)
    for periodic in (True, False):
        d = Domain(123.4, 56.7, periodic)
        p = rng.uniform(-500, 500, size=(2000, 2))
        out = canonicalize(p, d)
        assert np.all(out >= 0)
        assert np.all(out[:, 0] < d.lx) and np.all(out[:, 1] < d.ly)


def test_canonicalize_idempotent():
    rng = np.random.default_rng(1)
    for periodic in (True, False):
        d = Domain(200, 300, periodic)
        p = rng.uniform(-1000, 1000, size=(500, 2))
        once = canonicalize(p, d)
        assert np.array_equal(canonicalize(once, d), once)


def test_distance_symmetry_and_bounds():
    rng = np.random.default_rng(2)
    lx, ly = 1000.0, 600.0
    a = rng.random((1000, 2)) * (lx, ly)
    b = rng.random((1000, 2)) * (lx, ly)
    per = Domain(lx, ly, True)
    box = Domain(lx, ly, False)
    d_per = distance(a, b, per)
    assert np.array_equal(d_per, distance(b, a, per))
    assert np.all(d_per <= distance(a, b, box))
    assert np.all(d_per <= np.sqrt((lx / 2) ** 2 + (ly / 2) ** 2))


def test_domain_validation():
    with pytest.raises(ValueError):
        Domain(0, 10, True)
    with pytest.raises(ValueError):
        Domain(10, -1, False)
