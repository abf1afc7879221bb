import numpy as np
import pytest

from coanneal.linalg import svec
from coanneal.oracles import (ball_oracle, big_m_constant,
                              copositive_cap_oracle, cube_oracle,
                              dnn_interior_point, dnn_oracle, is_copositive)

from helpers import simplex_grid_min

HORN = np.array([
    [1.0, -1.0, 1.0, 1.0, -1.0],
    [-1.0, 1.0, -1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0, 1.0, -1.0],
    [-1.0, 1.0, 1.0, -1.0, 1.0]])


def test_ball_oracle_membership():
    o = ball_oracle(3, 2.0)
    assert o.contains(np.zeros(3))
    assert o.contains(np.array([2.0, 0.0, 0.0]))  # boundary is inside
    assert not o.contains(np.array([2.0 + 1e-9, 0.0, 0.0]))


def test_cube_oracle_membership():
    o = cube_oracle(4)
    assert o.contains(o.interior_point)
    assert o.contains(np.array([0.0, 1.0, 0.5, 1.0]))
    assert not o.contains(np.array([0.5, 0.5, 0.5, 1.1]))
    assert o.enclosing_radius == pytest.approx(2.0)


def test_call_count_increments_once_per_query():
    o = cube_oracle(2)
    assert o.call_count == 0
    o.contains(np.array([0.5, 0.5]))
    o.contains(np.array([2.0, 0.5]))
    assert o.call_count == 2


def test_contains_rejects_bad_shape():
    o = ball_oracle(3)
    with pytest.raises(ValueError):
        o.contains(np.zeros(4))


def test_dnn_interior_point_strictly_inside():
    for m in (2, 3, 5, 6):
        o = dnn_oracle(m)
        x = o.interior_point
        assert o.contains(x)
        # strictly inside: small perturbations stay feasible
        rng = np.random.default_rng(0)
        for _ in range(20):
            d = rng.standard_normal(o.dim)
            assert o.contains(x + 1e-6 * d / np.linalg.norm(d))


def test_dnn_oracle_rejections():
    o = dnn_oracle(2)
    # negative coordinate
    assert not o.contains(np.array([-1e-6, 0.1, 0.1]))
    # total matrix mass above 1
    assert not o.contains(svec(np.array([[0.6, 0.0], [0.0, 0.6]])))
    # indefinite matrix
    assert not o.contains(svec(np.array([[0.01, 0.3], [0.3, 0.01]])))
    # identity scaled inside
    assert o.contains(svec(0.4 * np.eye(2)))


def test_dnn_body_inside_unit_ball():
    o = dnn_oracle(4)
    rng = np.random.default_rng(1)
    for _ in range(200):
        x = rng.uniform(0.0, 0.3, o.dim)
        if o.contains(x):
            assert np.linalg.norm(x) <= 1.0 + 1e-12


def test_copositive_cap_membership():
    o = copositive_cap_oracle(3)
    assert o.contains(o.interior_point)
    near_boundary = svec(np.eye(3)) * (1.0 - 1e-12) / np.sqrt(3.0)
    assert o.contains(near_boundary)
    assert not o.contains(svec(np.eye(3)))  # norm sqrt(3) > 1
    assert not o.contains(-svec(np.eye(3)) / np.sqrt(3.0))


def test_horn_matrix_is_copositive_with_min_zero():
    cert = is_copositive(HORN)
    assert cert.is_copositive
    assert cert.min_value == pytest.approx(0.0, abs=1e-12)


def test_perturbed_horn_is_not_copositive():
    cert = is_copositive(HORN - 0.05 * np.eye(5))
    assert not cert.is_copositive
    assert cert.min_value < -1e-3
    a = cert.witness
    assert np.all(a >= 0.0)
    assert a.sum() == pytest.approx(1.0)
    A = HORN - 0.05 * np.eye(5)
    assert a @ A @ a == pytest.approx(cert.min_value, abs=1e-9)


def test_identity_and_negative_definite():
    assert is_copositive(np.eye(4)).min_value == pytest.approx(0.25)
    cert = is_copositive(-np.eye(3))
    assert not cert.is_copositive
    assert cert.min_value == pytest.approx(-1.0)


def test_copositive_min_matches_simplex_grid():
    # exact support enumeration against pure grid search, random small m
    rng = np.random.default_rng(42)
    for _ in range(25):
        m = int(rng.integers(2, 5))
        C = rng.standard_normal((m, m))
        A = (C + C.T) / 2.0
        cert = is_copositive(A)
        ref, _ = simplex_grid_min(A)
        assert cert.min_value == pytest.approx(ref, abs=1e-4)


def test_witness_certifies_violation():
    rng = np.random.default_rng(3)
    for _ in range(20):
        C = rng.standard_normal((4, 4))
        A = (C + C.T) / 2.0
        cert = is_copositive(A)
        if not cert.is_copositive:
            a = cert.witness
            assert a @ A @ a < 0.0


def test_big_m_constant():
    assert big_m_constant(2.5 * np.eye(3)) == pytest.approx(15.0)
    with pytest.raises(ValueError):
        big_m_constant(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_copositive_cap_order_limit():
    with pytest.raises(ValueError):
        copositive_cap_oracle(25)
    with pytest.raises(ValueError):
        is_copositive(np.eye(25))
