import numpy as np
import pytest

from tenmom import WenoVariant, reconstruct_left, reconstruct_right

ALL = [WenoVariant("js"), WenoVariant("z"), WenoVariant("ao")]


def cell_averages(antideriv, centers, h):
    """Exact cell averages of a function from its antiderivative."""
    lo = antideriv(centers - 0.5 * h)
    hi = antideriv(centers + 0.5 * h)
    return (hi - lo) / h


@pytest.mark.parametrize("v", ALL, ids=lambda v: v.tag)
def test_constant_consistency(v):
    for c in (0.0, 1.0, -3.7, 1e6):
        assert reconstruct_right([c] * 5, v) == pytest.approx(c, rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("v", ALL, ids=lambda v: v.tag)
def test_linear_data(v):
    # every candidate stencil reproduces linear data exactly
    assert reconstruct_right([-2, -1, 0, 1, 2], v) == pytest.approx(0.5, abs=1e-13)
    assert reconstruct_left([-2, -1, 0, 1, 2], v) == pytest.approx(-0.5, abs=1e-13)


@pytest.mark.parametrize("tag", ["js", "z", "ao"])
def test_quartic_exactness_forced_linear(tag):
    # cells of unit width centered at the integers; oracle from the
    # exact antiderivative x^5/5 and the point value at the face
    v = WenoVariant(tag, forced_linear=True)
    k = np.arange(-2.0, 3.0)
    avg = cell_averages(lambda x: x ** 5 / 5.0, k, 1.0)
    assert reconstruct_right(avg, v) == pytest.approx(0.5 ** 4, abs=1e-12)
    assert reconstruct_left(avg, v) == pytest.approx(0.5 ** 4, abs=1e-12)


@pytest.mark.parametrize("v", ALL, ids=lambda v: v.tag)
def test_order_of_accuracy_on_sine(v):
    errs = []
    for h in (0.2, 0.1, 0.05):
        centers = 0.3 + h * np.arange(-2.0, 3.0)
        avg = cell_averages(lambda x: -np.cos(x), centers, h)
        face = centers[2] + 0.5 * h
        errs.append(abs(reconstruct_right(avg, v) - np.sin(face)))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert orders.min() >= 4.5


@pytest.mark.parametrize("tag", ["js", "z"])
def test_scale_equivariance_eps_off(tag, rng):
    v = WenoVariant(tag, eps=0.0)
    s = rng.normal(size=5) + np.array([0.0, 0.3, 1.0, 2.1, 3.9])
    base = reconstruct_right(s, v)
    for a in (2.0, 0.5, 128.0):
        assert reconstruct_right(a * s, v) == pytest.approx(a * base, rel=1e-13)


@pytest.mark.parametrize("tag", ["js", "z"])
def test_scale_equivariance_default_eps(tag, rng):
    v = WenoVariant(tag)
    s = rng.normal(size=5) + np.array([1.0, 1.3, 2.0, 3.1, 4.9])
    assert np.linalg.norm(s) >= 1.0
    base = reconstruct_right(s, v)
    for a in (2.0, 7.5):
        assert reconstruct_right(a * s, v) == pytest.approx(a * base, rel=1e-6)


@pytest.mark.parametrize("v", ALL, ids=lambda v: v.tag)
def test_eno_bound_on_step(v):
    for s in ([0, 0, 0, 1, 1], [0, 0, 1, 1, 1], [1, 1, 1, 0, 0], [2, 2, 2, 2, 0]):
        s = np.asarray(s, dtype=float)
        val = reconstruct_right(s, v)
        margin = 0.1 * (s.max() - s.min())
        assert s.min() - margin <= val <= s.max() + margin


def test_ao_weights_validated():
    with pytest.raises(ValueError):
        WenoVariant("ao", gamma5=0.9, gamma_lo=(0.2, 0.2, 0.2))
    with pytest.raises(ValueError):
        WenoVariant("nope")


def test_mirror_symmetry(rng):
    # reconstructing the left face of reversed data equals the right face
    for v in ALL:
        s = rng.normal(size=5)
        assert reconstruct_left(s[::-1], v) == pytest.approx(
            reconstruct_right(s, v), rel=1e-13, abs=1e-13)
