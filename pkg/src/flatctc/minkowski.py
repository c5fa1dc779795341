"""Minkowski R^{2,1} primitives: bilinear form, causal classification,
orientation tests.

Coordinates are (x, y, z) with z the timelike direction, so the form is
B(v, w) = v.x*w.x + v.y*w.y - v.z*w.z and the future cone is z > 0.
Points of the affine space and vectors of its translation space are kept
as distinct types: only point - point, point + vector and point - vector
are defined, which rules out accidental origin-dependent arithmetic.

All functions here are pure and safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

import numpy as np

__all__ = [
    "J",
    "DEFAULT_TOL",
    "CausalKind",
    "Orientation",
    "CausalClass",
    "MVec",
    "MPoint",
    "ORIGIN",
    "bilinear",
    "causal_class",
    "orientation_det",
    "lorentz_defect",
]

#: Gram matrix of the form in the standard basis.
J = np.diag([1.0, 1.0, -1.0])
J.flags.writeable = False

#: Default tolerance applied to values of B(v, v).
DEFAULT_TOL = 1e-9


class CausalKind(Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"
    ZERO = "zero"


class Orientation(Enum):
    FUTURE = "future"
    PAST = "past"
    NONE = "none"


@dataclass(frozen=True)
class CausalClass:
    """Causal character of a vector plus its time orientation.

    Only timelike and lightlike vectors carry an orientation; spacelike
    and zero vectors always have orientation NONE.
    """

    kind: CausalKind
    orientation: Orientation

    def __post_init__(self):
        oriented = self.kind in (CausalKind.TIMELIKE, CausalKind.LIGHTLIKE)
        if oriented != (self.orientation is not Orientation.NONE):
            raise ValueError(
                f"orientation {self.orientation} inconsistent with kind {self.kind}"
            )

    @property
    def is_timelike(self) -> bool:
        return self.kind is CausalKind.TIMELIKE


def _coerce(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} component must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class MVec:
    """Vector in R^{2,1}."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce("x", self.x))
        object.__setattr__(self, "y", _coerce("y", self.y))
        object.__setattr__(self, "z", _coerce("z", self.z))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.z], dtype=dtype or float)

    def __add__(self, other: "MVec") -> "MVec":
        if not isinstance(other, MVec):
            return NotImplemented
        return MVec(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "MVec") -> "MVec":
        if not isinstance(other, MVec):
            return NotImplemented
        return MVec(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "MVec":
        return MVec(-self.x, -self.y, -self.z)

    def __mul__(self, s) -> "MVec":
        s = float(s)
        return MVec(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "MVec":
        s = float(s)
        return MVec(self.x / s, self.y / s, self.z / s)

    def norm(self) -> float:
        """Euclidean length (used for tolerances, not geometry)."""
        return math.hypot(self.x, self.y, self.z)

    @staticmethod
    def from_array(arr) -> "MVec":
        a = np.asarray(arr, dtype=float).reshape(3)
        return MVec(a[0], a[1], a[2])


@dataclass(frozen=True)
class MPoint:
    """Point of the affine space, in coordinates relative to the origin."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce("x", self.x))
        object.__setattr__(self, "y", _coerce("y", self.y))
        object.__setattr__(self, "z", _coerce("z", self.z))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.z], dtype=dtype or float)

    def __add__(self, other: MVec) -> "MPoint":
        if not isinstance(other, MVec):
            return NotImplemented
        return MPoint(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other) -> Union["MPoint", MVec]:
        if isinstance(other, MPoint):
            return MVec(self.x - other.x, self.y - other.y, self.z - other.z)
        if isinstance(other, MVec):
            return MPoint(self.x - other.x, self.y - other.y, self.z - other.z)
        return NotImplemented

    @staticmethod
    def from_array(arr) -> "MPoint":
        a = np.asarray(arr, dtype=float).reshape(3)
        return MPoint(a[0], a[1], a[2])


ORIGIN = MPoint(0.0, 0.0, 0.0)

VecLike = Union[MVec, MPoint, Iterable[float]]


def _components(v: VecLike) -> tuple[float, float, float]:
    if isinstance(v, (MVec, MPoint)):
        return v.x, v.y, v.z
    a, b, c = (float(t) for t in v)
    return a, b, c


def bilinear(v: VecLike, w: VecLike) -> float:
    """Lorentzian inner product of signature (2, 1): xu + yv - zw."""
    vx, vy, vz = _components(v)
    wx, wy, wz = _components(w)
    return vx * wx + vy * wy - vz * wz


def causal_class(v: VecLike, tol: float = DEFAULT_TOL) -> CausalClass:
    """Classify a vector as timelike/lightlike/spacelike/zero.

    The tolerance applies to B(v, v), the invariant quantity; vectors
    with |B(v, v)| <= tol but components above tol are labelled
    lightlike so that region boundaries remain representable.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    x, y, z = _components(v)
    if max(abs(x), abs(y), abs(z)) <= tol:
        return CausalClass(CausalKind.ZERO, Orientation.NONE)
    q = x * x + y * y - z * z
    if q < -tol:
        kind = CausalKind.TIMELIKE
    elif q > tol:
        return CausalClass(CausalKind.SPACELIKE, Orientation.NONE)
    else:
        kind = CausalKind.LIGHTLIKE
    orientation = Orientation.FUTURE if z >= 0 else Orientation.PAST
    return CausalClass(kind, orientation)


def orientation_det(a: VecLike, b: VecLike, c: VecLike) -> int:
    """Sign of det[a b c] (columns); +1 for a right-handed triple."""
    ax, ay, az = _components(a)
    bx, by, bz = _components(b)
    cx, cy, cz = _components(c)
    d = (
        ax * (by * cz - bz * cy)
        - bx * (ay * cz - az * cy)
        + cx * (ay * bz - az * by)
    )
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def lorentz_defect(g) -> float:
    """Max-abs residual of g^T J g - J; zero iff g preserves the form."""
    g = np.asarray(g, dtype=float)
    return float(np.max(np.abs(g.T @ J @ g - J)))
