import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from swarmsphere.geometry import Partition, SphereCandidate, classify, cloud_scale
from swarmsphere.objective import Weights, cloud_weights, evaluate, evaluate_many, lms_error

coord = st.floats(-100, 100, allow_nan=False)
clouds = arrays(np.float64, st.tuples(st.integers(1, 30), st.just(3)), elements=coord)
weights = st.builds(Weights, st.floats(0.01, 10), st.floats(0, 10), st.floats(0, 10))


def unit_sphere_points():
    rng = np.random.default_rng(0)
    d = rng.standard_normal((10, 3))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def test_lms_all_inside_is_zero():
    cloud = np.zeros((4, 3))
    s = SphereCandidate((0, 0, 0), 1.0)
    assert lms_error(cloud, classify(cloud, s), s) == 0.0


def test_lms_single_outside():
    cloud = np.array([[0, 0, 0], [5, 0, 0]])
    s = SphereCandidate((0, 0, 0), 3.0)
    assert lms_error(cloud, classify(cloud, s), s) == 4.0


def test_lms_two_outside():
    cloud = np.array([[0, 4, 0], [0, 0, -6], [0.5, 0, 0]])
    s = SphereCandidate((0, 0, 0), 3.0)
    assert lms_error(cloud, classify(cloud, s), s) == 5.0


def test_lms_inconsistent_partition():
    cloud = np.zeros((3, 3))
    s = SphereCandidate((0, 0, 0), 1.0)
    with pytest.raises(ValueError, match="inconsistent partition"):
        lms_error(cloud, Partition(np.array([0, 1]), np.array([7])), s)
    with pytest.raises(ValueError, match="inconsistent partition"):
        lms_error(cloud, Partition(np.array([0]), np.array([1])), s)


def test_evaluate_enclosure_only():
    cloud = unit_sphere_points() * 0.9
    out = evaluate(cloud, SphereCandidate((0, 0, 0), 1.0), Weights(1, 0, 0))
    assert out.j == -10
    assert out.inside_count == 10


def test_evaluate_radius_only():
    out = evaluate(unit_sphere_points(), SphereCandidate((3, 1, 2), 7.45), Weights(0, 1, 0))
    assert out.j == 7.45


def test_evaluate_linear_recomposition():
    inside = np.eye(3)[[0, 1, 2, 0, 1]] * 0.5
    outside = np.array([[3.0, 0, 0], [0, 2.5, 0], [0, 0, -2.5]])
    cloud = np.vstack([inside, outside])
    out = evaluate(cloud, SphereCandidate((0, 0, 0), 2.0), Weights(1, 1, 1))
    assert out.inside_count == 5
    assert out.lms == 0.5
    assert out.j == -2.5


@settings(max_examples=60)
@given(clouds, coord, coord, coord, st.floats(0, 200), weights)
def test_breakdown_recomposes(cloud, x, y, z, r, w):
    out = evaluate(cloud, SphereCandidate((x, y, z), r), w)
    assert out.j == -w.lam * out.inside_count + out.radius_term + out.lms_term


@settings(max_examples=60)
@given(clouds, coord, coord, coord, st.floats(0, 200), weights)
def test_weights_enter_linearly(cloud, x, y, z, r, w):
    s = SphereCandidate((x, y, z), r)
    a = evaluate(cloud, s, w)
    b = evaluate(cloud, s, w.scaled(2.0))
    assert b.inside_count == a.inside_count
    assert b.radius_term == 2 * a.radius_term
    assert b.lms_term == 2 * a.lms_term
    assert b.j == pytest.approx(2 * a.j, rel=1e-12, abs=1e-12)


@settings(max_examples=60)
@given(clouds, coord, coord, coord, st.floats(0, 200), st.floats(0, 200))
def test_inside_count_monotone_in_radius(cloud, x, y, z, r1, r2):
    lo, hi = sorted((r1, r2))
    w = Weights(1, 1, 1)
    assert evaluate(cloud, SphereCandidate((x, y, z), lo), w).inside_count <= \
        evaluate(cloud, SphereCandidate((x, y, z), hi), w).inside_count


@settings(max_examples=40)
@given(clouds, st.floats(0.1, 100), st.integers(0, 2**32 - 1))
def test_lms_rigid_motion_invariant(cloud, r, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    shift = rng.uniform(-50, 50, 3)
    c = rng.uniform(-10, 10, 3)
    s = SphereCandidate(c, r)
    moved = SphereCandidate(c @ q.T + shift, r)
    cloud2 = cloud @ q.T + shift
    a = lms_error(cloud, classify(cloud, s), s)
    part = classify(cloud, s)
    # Same index partition to avoid boundary flips from rounding.
    b = lms_error(cloud2, part, moved)
    assert b == pytest.approx(a, rel=1e-9, abs=1e-9)


def test_radius_only_weights_minimised_at_zero():
    cloud = unit_sphere_points()
    w = Weights(0, 1, 0)
    radii = np.linspace(0, 3, 31)
    js = [evaluate(cloud, SphereCandidate((0, 0, 0), r), w).j for r in radii]
    assert np.argmin(js) == 0


def test_evaluate_matches_lms_error():
    rng = np.random.default_rng(5)
    cloud = rng.normal(size=(50, 3))
    s = SphereCandidate((0.1, -0.2, 0.3), 1.2)
    out = evaluate(cloud, s, Weights(1, 1, 1))
    assert out.lms == pytest.approx(lms_error(cloud, classify(cloud, s), s), rel=1e-13)


def test_evaluate_many_matches_single():
    rng = np.random.default_rng(6)
    cloud = rng.normal(size=(80, 3))
    pos = np.column_stack([rng.normal(size=(16, 3)), rng.uniform(0, 3, 16)])
    w = Weights(1, 2, 0.5)
    j, count, lms = evaluate_many(cloud, pos, w)
    for k in range(16):
        single = evaluate(cloud, SphereCandidate(pos[k, :3], pos[k, 3]), w)
        assert single.j == j[k]
        assert single.inside_count == count[k]


def test_weights_validation_and_parse():
    assert Weights.parse("1,2.5,0") == Weights(1, 2.5, 0)
    with pytest.raises(ValueError):
        Weights(0, 0, 0)
    with pytest.raises(ValueError):
        Weights(-1, 1, 1)
    with pytest.raises(ValueError):
        Weights.parse("1,2")


def test_cloud_weights_formula():
    rng = np.random.default_rng(1)
    cloud = rng.normal(size=(100, 3))
    s = cloud_scale(cloud)
    w = cloud_weights(cloud, enclosure=2.0, radius=0.5, lms=0.25)
    assert w.lam == 2.0
    assert w.alpha == pytest.approx(0.5 * 100 / s)
    assert w.beta == pytest.approx(0.25 * 100 / s**2)
