"""Shared fixtures and random-element factories for the test suite."""

import math

import numpy as np
import pytest

from flatctc import (
    Isometry,
    MPoint,
    boost_isometry,
    conjugate,
    parabolic_isometry,
    rotation_isometry,
    torus_example,
)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


def boost_matrix(mu: float) -> np.ndarray:
    ch, sh = math.cosh(mu), math.sinh(mu)
    return np.array([[1.0, 0.0, 0.0], [0.0, ch, -sh], [0.0, -sh, ch]])


def random_lorentz(rng: np.random.Generator, max_rapidity: float = 2.0) -> np.ndarray:
    """Random element of the identity component: rotation-boost-rotation."""
    a, b = rng.uniform(-math.pi, math.pi, 2)
    mu = rng.uniform(-max_rapidity, max_rapidity)
    return rotation_matrix(a) @ boost_matrix(mu) @ rotation_matrix(b)


def random_poincare(rng: np.random.Generator, max_rapidity: float = 2.0) -> Isometry:
    return Isometry(random_lorentz(rng, max_rapidity), rng.uniform(-3.0, 3.0, 3))


def random_point(rng: np.random.Generator, scale: float = 5.0) -> MPoint:
    return MPoint(*rng.uniform(-scale, scale, 3))


def random_hyperbolic(rng: np.random.Generator) -> Isometry:
    base = boost_isometry(rng.uniform(0.3, 2.0), rng.uniform(-2.0, 2.0))
    return conjugate(base, random_poincare(rng, 1.0))


def random_parabolic(rng: np.random.Generator, tau=None) -> Isometry:
    if tau is None:
        tau = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
    return conjugate(parabolic_isometry(tau), random_poincare(rng, 1.0))


def random_elliptic(rng: np.random.Generator, t=None) -> Isometry:
    theta = rng.uniform(0.3, math.pi - 0.3) * rng.choice([-1.0, 1.0])
    if t is None:
        t = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
    return conjugate(rotation_isometry(theta, t), random_poincare(rng, 1.0))


@pytest.fixture(scope="session")
def torus():
    return torus_example()


@pytest.fixture(scope="session")
def gamma1(torus):
    return torus.generators[0]


@pytest.fixture(scope="session")
def gamma2(torus):
    return torus.generators[1]
