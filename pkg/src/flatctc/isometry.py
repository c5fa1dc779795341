"""Affine isometries of 3D Minkowski space.

Covers construction and the group operations, the trace classification
into hyperbolic / parabolic / elliptic, closed-form eigenframes for
hyperbolic linear parts, the signed Lorentzian length (Margulis alpha),
invariant lines, conjugation, and canonical forms for each class.

Everything works in the identity component G of the isometry group
(orientation and time-orientation preserving).  Constructors reject
linear parts outside G unless ``unchecked=True``; that flag is also how
changes of basis (plain GL(3) maps) and canonical adapted-coordinate
forms are represented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .errors import (
    IdentityInputError,
    NotHyperbolicError,
    NotLorentzError,
    SingularMatrixError,
)
from .minkowski import J, MPoint, MVec, ORIGIN, bilinear, lorentz_defect, orientation_det

__all__ = [
    "TRACE_TOL",
    "LORENTZ_TOL",
    "FIXED_POINT_TOL",
    "Isometry",
    "IsometryKind",
    "IsometryClass",
    "EigenFrame",
    "InvariantLine",
    "HyperbolicNormalForm",
    "ParabolicNormalForm",
    "EllipticNormalForm",
    "NormalFormResult",
    "classify",
    "eigenframe",
    "margulis_alpha",
    "invariant_line",
    "conjugate",
    "normal_form",
    "canonical_isometry",
    "identity_isometry",
    "translation_isometry",
    "rotation_isometry",
    "boost_isometry",
    "parabolic_isometry",
    "PARABOLIC_BASIS",
    "PARABOLIC_SHEAR",
]

#: Half-width of the trace band that separates parabolic from the rest.
TRACE_TOL = 1e-8
#: Max allowed residual of g^T J g - J for checked constructions.
LORENTZ_TOL = 1e-9
#: Residual threshold (scaled by 1 + |v|) for fixed-point detection.
FIXED_POINT_TOL = 1e-8

_IDENTITY = np.eye(3)


class Isometry:
    """Affine map p -> g(p - O) + O + v with g the linear part.

    ``linear`` and ``translation`` are stored as read-only float arrays.
    By default the constructor requires g in the identity component of
    the Lorentz group: g^T J g = J within LORENTZ_TOL, det g > 0 and
    g[2,2] > 0.  Pass ``unchecked=True`` to store an arbitrary
    invertible map (used for changes of basis and canonical forms in
    adapted coordinates).

    Group operations (compose / inverse / power) never re-validate, so
    long products do not spuriously fail the residual check.
    """

    __slots__ = ("linear", "translation", "_o21")

    def __init__(self, linear, translation, *, unchecked: bool = False):
        g = np.array(linear, dtype=float)
        if g.shape == (9,):
            g = g.reshape(3, 3)
        if g.shape != (3, 3):
            raise ValueError(f"linear part must be 3x3, got shape {g.shape}")
        v = np.array(translation, dtype=float).reshape(3)
        if not (np.isfinite(g).all() and np.isfinite(v).all()):
            raise ValueError("isometry entries must be finite")
        defect = lorentz_defect(g)
        # the defect is quadratic in the entries, so tolerances scale with
        # the squared magnitude; strong boosts stay admissible
        scale = 1.0 + float(np.max(np.abs(g))) ** 2
        self._o21 = defect <= 1e-7 * scale
        if not unchecked:
            if defect > LORENTZ_TOL * scale:
                raise NotLorentzError("linear part does not preserve the form", defect)
            if np.linalg.det(g) < 0:
                raise NotLorentzError("linear part reverses orientation", defect)
            if g[2, 2] <= 0:
                raise NotLorentzError("linear part reverses time orientation", defect)
        g.flags.writeable = False
        v.flags.writeable = False
        self.linear = g
        self.translation = v

    # -- basic queries ------------------------------------------------

    @property
    def trace(self) -> float:
        return float(self.linear.trace())

    @property
    def in_identity_component(self) -> bool:
        g = self.linear
        scale = 1.0 + float(np.max(np.abs(g))) ** 2
        return (
            lorentz_defect(g) <= LORENTZ_TOL * scale
            and np.linalg.det(g) > 0
            and g[2, 2] > 0
        )

    @property
    def translation_vec(self) -> MVec:
        return MVec.from_array(self.translation)

    def is_close(self, other: "Isometry", tol: float = 1e-9) -> bool:
        return (
            np.max(np.abs(self.linear - other.linear)) <= tol
            and np.max(np.abs(self.translation - other.translation)) <= tol
        )

    # -- action and group structure ------------------------------------

    def apply(self, p: MPoint) -> MPoint:
        coords = self.linear @ np.asarray(p) + self.translation
        return MPoint(coords[0], coords[1], coords[2])

    __call__ = apply

    def transform_vector(self, v: MVec) -> MVec:
        return MVec.from_array(self.linear @ np.asarray(v))

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other: (self.compose(other))(p) = self(other(p))."""
        return Isometry(
            self.linear @ other.linear,
            self.linear @ other.translation + self.translation,
            unchecked=True,
        )

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.compose(other)

    def inverse(self) -> "Isometry":
        # J g^T J inverts any form-preserving matrix without a solve.
        if self._o21:
            ginv = J @ self.linear.T @ J
        else:
            try:
                ginv = np.linalg.inv(self.linear)
            except np.linalg.LinAlgError as exc:
                raise SingularMatrixError("linear part is singular") from exc
        return Isometry(ginv, -(ginv @ self.translation), unchecked=True)

    def power(self, n: int) -> "Isometry":
        """n-th power by repeated squaring; negative n uses the inverse."""
        n = int(n)
        if n == 0:
            return identity_isometry()
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = None
        while n:
            if n & 1:
                result = base if result is None else result.compose(base)
            n >>= 1
            if n:
                base = base.compose(base)
        return result

    def __repr__(self) -> str:
        g = np.array2string(self.linear, separator=", ", precision=6)
        v = np.array2string(self.translation, separator=", ", precision=6)
        return f"Isometry(linear={g}, translation={v})"

    # pickling support for parallel raster evaluation
    def __getstate__(self):
        return (np.array(self.linear), np.array(self.translation))

    def __setstate__(self, state):
        self.__init__(state[0], state[1], unchecked=True)


class IsometryKind(Enum):
    IDENTITY = "identity"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"


@dataclass(frozen=True)
class IsometryClass:
    """Trace classification of the linear part plus fixed-point data.

    ``kind`` refers to the linear part, so a pure translation reports
    IDENTITY with ``has_fixed_point=False``.  ``fixed_set`` is "line"
    or "space" when a fixed set exists.  ``marginal`` warns that the
    trace sits within ten band-widths of the parabolic threshold, where
    the classification is numerically delicate.
    """

    kind: IsometryKind
    has_fixed_point: bool
    fixed_set: Optional[str]
    trace: float
    marginal: bool = False


@dataclass(frozen=True)
class EigenFrame:
    """Null/axis eigenbasis of a hyperbolic linear part.

    ``x_minus`` and ``x_plus`` are future-pointing null eigenvectors
    with eigenvalues ``contraction`` < 1 < 1/``contraction``, scaled so
    that B(x_minus, x_plus) = -1 with equal z components.  ``x_axis``
    is the unit-spacelike 1-eigenvector, signed to make the triple
    (x_minus, x_plus, x_axis) right-handed.
    """

    x_minus: MVec
    x_plus: MVec
    x_axis: MVec
    contraction: float

    def __post_init__(self):
        if not 0.0 < self.contraction < 1.0:
            raise ValueError("contraction factor must lie in (0, 1)")
        if abs(bilinear(self.x_axis, self.x_axis) - 1.0) > 1e-9:
            raise ValueError("axis vector must be unit spacelike")
        if abs(bilinear(self.x_minus, self.x_plus) + 1.0) > 1e-9:
            raise ValueError("null pair must satisfy B(x-, x+) = -1")
        if self.x_minus.z <= 0 or self.x_plus.z <= 0:
            raise ValueError("null eigenvectors must be future pointing")
        if orientation_det(self.x_minus, self.x_plus, self.x_axis) != 1:
            raise ValueError("frame must be right-handed")

    @property
    def matrix(self) -> np.ndarray:
        """Change of basis: columns are (x_minus, x_plus, x_axis)."""
        return np.column_stack(
            [np.asarray(self.x_minus), np.asarray(self.x_plus), np.asarray(self.x_axis)]
        )

    def coords(self, v: MVec) -> tuple[float, float, float]:
        """Frame coordinates (v_-, v_+, v_0) of a vector, via B-duality."""
        return (
            -bilinear(v, self.x_plus),
            -bilinear(v, self.x_minus),
            bilinear(v, self.x_axis),
        )


@dataclass(frozen=True)
class InvariantLine:
    """The unique line translated along itself by a hyperbolic isometry.

    ``base`` is the point of the line whose axis coordinate relative to
    the coordinate origin vanishes, which makes it deterministic.
    """

    base: MPoint
    direction: MVec


@dataclass(frozen=True)
class HyperbolicNormalForm:
    contraction: float
    alpha: float


@dataclass(frozen=True)
class ParabolicNormalForm:
    tau: float


@dataclass(frozen=True)
class EllipticNormalForm:
    theta: float
    t: float


NormalForm = Union[HyperbolicNormalForm, ParabolicNormalForm, EllipticNormalForm]


@dataclass(frozen=True)
class NormalFormResult:
    """Canonical parameters plus the affine change of coordinates.

    ``to_adapted`` maps standard coordinates to adapted ones, so
    ``conjugate(gamma, to_adapted)`` equals
    ``canonical_isometry(form)`` within 1e-9.
    """

    form: NormalForm
    to_adapted: Isometry


# ---------------------------------------------------------------------------
# constructors for standard families


def identity_isometry() -> Isometry:
    return Isometry(_IDENTITY, (0.0, 0.0, 0.0), unchecked=True)


def translation_isometry(v) -> Isometry:
    return Isometry(_IDENTITY, np.asarray(v, dtype=float), unchecked=True)


def rotation_isometry(theta: float, t: float = 0.0) -> Isometry:
    """Rotation by theta about the z-axis, translated by (0, 0, t)."""
    c, s = math.cos(theta), math.sin(theta)
    g = np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
    return Isometry(g, (0.0, 0.0, t))


def boost_isometry(mu: float, offset: float = 0.0) -> Isometry:
    """Boost of rapidity mu in the (y, z) plane, translated by
    (offset, 0, 0) along its invariant axis."""
    ch, sh = math.cosh(mu), math.sinh(mu)
    g = np.array([[1.0, 0.0, 0.0], [0.0, ch, -sh], [0.0, -sh, ch]])
    return Isometry(g, (offset, 0.0, 0.0))


_SQRT2 = math.sqrt(2.0)

#: Adapted null basis (x0, x1, x2) for the parabolic canonical form,
#: as columns: x0 and x2 future null, x1 unit spacelike, B(x0, x2) = -1.
PARABOLIC_BASIS = np.array(
    [
        [0.0, 1.0, 0.0],
        [-1.0 / _SQRT2, 0.0, 1.0 / _SQRT2],
        [1.0 / _SQRT2, 0.0, 1.0 / _SQRT2],
    ]
)
PARABOLIC_BASIS.flags.writeable = False

#: Canonical parabolic linear part in the adapted basis.
PARABOLIC_SHEAR = np.array(
    [[1.0, _SQRT2, 1.0], [0.0, 1.0, _SQRT2], [0.0, 0.0, 1.0]]
)
PARABOLIC_SHEAR.flags.writeable = False


def parabolic_isometry(tau: float) -> Isometry:
    """Parabolic isometry in standard coordinates whose translational
    part is tau times the adapted null direction x2.  tau = 0 gives the
    fixed-point case, tau != 0 the fixed-point-free one."""
    c = PARABOLIC_BASIS
    g = c @ PARABOLIC_SHEAR @ c.T  # the basis matrix is orthogonal
    v = float(tau) * c[:, 2]
    return Isometry(g, v)


# ---------------------------------------------------------------------------
# classification


def classify(
    iso: Isometry,
    tol_tr: float = TRACE_TOL,
    *,
    allow_improper: bool = False,
) -> IsometryClass:
    """Classify by the trace of the linear part and solve for fixed points.

    Fixed points are detected with a rank-revealing least-squares solve
    of (g - I)x = -v, accepting residuals up to FIXED_POINT_TOL*(1+|v|).
    """
    if not allow_improper and not iso.in_identity_component:
        raise NotLorentzError(
            "isometry lies outside the identity component; pass "
            "allow_improper=True to classify anyway",
            lorentz_defect(iso.linear),
        )
    g = iso.linear
    v = iso.translation
    tr = iso.trace
    gap = tr - 3.0

    if np.max(np.abs(g - _IDENTITY)) <= tol_tr:
        kind = IsometryKind.IDENTITY
    elif gap > tol_tr:
        kind = IsometryKind.HYPERBOLIC
    elif gap < -tol_tr:
        kind = IsometryKind.ELLIPTIC
    else:
        kind = IsometryKind.PARABOLIC
    marginal = kind is not IsometryKind.IDENTITY and 0.0 < abs(gap) <= 10.0 * tol_tr

    a = g - _IDENTITY
    vnorm = float(np.linalg.norm(v))
    sol = np.linalg.lstsq(a, -v, rcond=None)[0]
    residual = float(np.linalg.norm(a @ sol + v))
    has_fixed = residual <= FIXED_POINT_TOL * (1.0 + vnorm)

    fixed_set = None
    if has_fixed:
        rank = int(np.linalg.matrix_rank(a, tol=1e-8))
        fixed_set = "space" if rank == 0 else "line"
    return IsometryClass(kind, has_fixed, fixed_set, tr, marginal)


def fixed_point(iso: Isometry) -> MPoint:
    """Any point fixed by the isometry (minimal-norm one); raises if none."""
    a = iso.linear - _IDENTITY
    v = iso.translation
    sol = np.linalg.lstsq(a, -v, rcond=None)[0]
    residual = float(np.linalg.norm(a @ sol + v))
    if residual > FIXED_POINT_TOL * (1.0 + float(np.linalg.norm(v))):
        raise ValueError("isometry has no fixed point")
    return MPoint.from_array(sol)


# ---------------------------------------------------------------------------
# hyperbolic machinery


def _kernel_vector(m: np.ndarray) -> np.ndarray:
    """Unit kernel vector of a rank-2 matrix: the cross product of the
    two most independent rows."""
    candidates = [
        np.cross(m[0], m[1]),
        np.cross(m[0], m[2]),
        np.cross(m[1], m[2]),
    ]
    norms = [np.linalg.norm(c) for c in candidates]
    best = int(np.argmax(norms))
    scale = max(float(np.max(np.abs(m))), 1.0)
    if norms[best] <= 1e-14 * scale * scale:
        raise ArithmeticError("kernel extraction failed: matrix rank below 2")
    return candidates[best] / norms[best]


def _linear_of(g) -> np.ndarray:
    if isinstance(g, Isometry):
        return g.linear
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix or an Isometry")
    return g


def eigenframe(g, tol_tr: float = TRACE_TOL) -> EigenFrame:
    """Closed-form eigenbasis of a hyperbolic linear part.

    The two boost eigenvalues are the roots of the characteristic
    quadratic on the plane transverse to the axis (1 is always an
    eigenvalue), and the eigenvectors come from explicit 3x3 kernel
    extraction, not a general eigensolver.  Scaling fixes
    B(x-, x+) = -1 with equal z components, which pins the residual
    (a, 1/2a) freedom and makes the frame deterministic.
    """
    g = _linear_of(g)
    tr = float(g.trace())
    if tr <= 3.0 + tol_tr:
        raise NotHyperbolicError(f"trace {tr!r} is not above 3")
    # lam + 1/lam = tr - 1; the reciprocal form avoids the cancellation
    # in c - sqrt(c^2 - 1) that loses half the digits for strong boosts
    c = (tr - 1.0) / 2.0
    s = math.sqrt(c * c - 1.0)
    lam = 1.0 / (c + s)

    xm = _kernel_vector(g - lam * _IDENTITY)
    xp = _kernel_vector(g - (c + s) * _IDENTITY)
    xm = xm / xm[2]  # rescales to z = 1, flipping past-pointing picks
    xp = xp / xp[2]
    pairing = -(xm[0] * xp[0] + xm[1] * xp[1] - 1.0)  # -B(xm, xp) > 0
    scale = 1.0 / math.sqrt(pairing)
    xm = xm * scale
    xp = xp * scale

    x0 = _kernel_vector(g - _IDENTITY)
    x0 = x0 / math.sqrt(bilinear(x0, x0))
    if orientation_det(xm, xp, x0) < 0:
        x0 = -x0
    return EigenFrame(
        MVec.from_array(xm), MVec.from_array(xp), MVec.from_array(x0), lam
    )


_ALPHA_PROBES = np.array(
    [
        [0.29413827, -0.76790902, 0.33112177],
        [-0.88543509, 0.16871734, 0.62893055],
        [0.41512741, 0.74694323, -0.94615421],
    ]
)
_ALPHA_PROBES.flags.writeable = False


def margulis_alpha(iso: Isometry) -> float:
    """Signed Lorentzian length: B(gamma(p) - p, x_axis).

    Evaluated at three fixed probe points; the results must agree to
    1e-9, since the pairing is independent of the point.
    """
    frame = eigenframe(iso.linear)
    vals = []
    for row in _ALPHA_PROBES:
        p = MPoint.from_array(row)
        vals.append(bilinear(iso(p) - p, frame.x_axis))
    spread = max(vals) - min(vals)
    if spread > 1e-9 * (1.0 + float(np.linalg.norm(iso.translation))):
        raise ArithmeticError(
            f"signed length varied by {spread:.3e} across probe points"
        )
    return float(np.mean(vals))


def invariant_line(iso: Isometry) -> InvariantLine:
    """The unique invariant line of a hyperbolic isometry.

    Solves the two contracting/expanding components of the fixed-point
    equation in frame coordinates; the axis component is left at zero,
    which is the deterministic base-point convention.
    """
    frame = eigenframe(iso.linear)
    lam = frame.contraction
    v = MVec.from_array(iso.translation)
    vm, vp, _ = frame.coords(v)
    qm = vm / (1.0 - lam)
    qp = vp / (1.0 - 1.0 / lam)
    base = ORIGIN + qm * frame.x_minus + qp * frame.x_plus

    d = iso(base) - base
    off_axis = d - bilinear(d, frame.x_axis) * frame.x_axis
    if off_axis.norm() > 1e-9 * (1.0 + d.norm()):
        raise ArithmeticError("invariant line residual check failed")
    return InvariantLine(base, frame.x_axis)


# ---------------------------------------------------------------------------
# conjugation and normal forms


def conjugate(iso: Isometry, h) -> Isometry:
    """Return h gamma h^{-1}; h may be an Isometry or a 3x3 matrix.

    A matrix h acts as the linear change of basis p -> h p.  The result
    is validated against the standard form only if it happens to land
    in the Lorentz group, because changes of basis generally do not
    preserve the coordinate expression of B.
    """
    if isinstance(h, Isometry):
        hh = h
    else:
        a = np.asarray(h, dtype=float)
        if a.shape != (3, 3):
            raise ValueError("conjugator must be an Isometry or a 3x3 matrix")
        if abs(np.linalg.det(a)) <= 1e-12 * max(1.0, float(np.max(np.abs(a))) ** 3):
            raise SingularMatrixError("conjugating matrix is singular")
        hh = Isometry(a, (0.0, 0.0, 0.0), unchecked=True)
    return hh.compose(iso).compose(hh.inverse())


def _solve_in_range(a: np.ndarray, b: np.ndarray, scale: float) -> np.ndarray:
    """Minimal-norm solution of a x = b, requiring b in range(a)."""
    sol = np.linalg.lstsq(a, b, rcond=None)[0]
    residual = float(np.linalg.norm(a @ sol - b))
    if residual > 1e-8 * (1.0 + scale):
        raise ArithmeticError("adapted-origin solve left a large residual")
    return sol


def _parabolic_frame(g: np.ndarray) -> np.ndarray:
    """Adapted basis (x0, x1, x2) for a parabolic linear part, as columns.

    x0 spans the fixed null direction (future pointing), x1 is unit
    spacelike with (g - I) x1 = sqrt(2) x0, and x2 is future null with
    (g - I) x2 = x0 + sqrt(2) x1 and B(x2, x2) = 0.  In this basis g is
    exactly the canonical shear matrix.
    """
    n = g - _IDENTITY
    n2 = n @ n
    col = int(np.argmax(np.linalg.norm(n2, axis=0)))
    scale = max(float(np.max(np.abs(n2))), 0.0)
    if scale <= 1e-14:
        raise ArithmeticError("linear part is not a full parabolic block")
    y = n[:, col].copy()  # = n @ e_col, with (g - I) y spanning the fixed direction
    q = bilinear(y, y)
    if q <= 0:
        raise ArithmeticError("shear image vector is not spacelike")
    x1 = y / math.sqrt(q)
    x0 = (n @ x1) / _SQRT2
    if x0[2] < 0:
        x1 = -x1
        x0 = -x0
    x2 = _solve_in_range(n, x0 + _SQRT2 * x1, float(np.linalg.norm(x0 + x1)))
    x2 = x2 + (bilinear(x2, x2) / 2.0) * x0
    return np.column_stack([x0, x1, x2])


def _elliptic_frame(g: np.ndarray) -> np.ndarray:
    """Lorentz basis (b1, b2, axis) for an elliptic linear part, with the
    rotation axis future timelike and the triple right-handed; the basis
    matrix lies in the identity component, so conjugation by it keeps
    the standard coordinate form of B."""
    axis = _kernel_vector(g - _IDENTITY)
    q = bilinear(axis, axis)
    if q >= 0:
        raise ArithmeticError("rotation axis is not timelike")
    axis = axis / math.sqrt(-q)
    if axis[2] < 0:
        axis = -axis
    e1 = _IDENTITY[:, 0]
    b1 = e1 + bilinear(e1, axis) * axis  # B-orthogonal projection
    b1 = b1 / math.sqrt(bilinear(b1, b1))
    b2 = J @ np.cross(axis, b1)
    b2 = b2 / math.sqrt(bilinear(b2, b2))
    if orientation_det(b1, b2, axis) < 0:
        b2 = -b2
    return np.column_stack([b1, b2, axis])


def normal_form(iso: Isometry, tol_tr: float = TRACE_TOL) -> NormalFormResult:
    """Canonical parameters and the conjugation that realizes them.

    Hyperbolic: eigenframe basis with the origin moved onto the
    invariant line, giving diag(lam, 1/lam, 1) plus (0, 0, alpha).
    Parabolic: adapted null basis, giving the canonical shear plus
    (0, 0, tau).  Elliptic: rotation axis aligned with the z-axis,
    giving a rotation by theta in (-pi, pi] plus (0, 0, t).

    Raises IdentityInputError when the linear part is the identity
    (this includes pure translations, which fit none of the classes).
    """
    cls = classify(iso, tol_tr)
    g = iso.linear
    v = iso.translation

    if cls.kind is IsometryKind.IDENTITY:
        raise IdentityInputError(
            "normal form is undefined for identity linear parts"
        )

    if cls.kind is IsometryKind.HYPERBOLIC:
        frame = eigenframe(g, tol_tr)
        line = invariant_line(iso)
        alpha = margulis_alpha(iso)
        c = frame.matrix
        cinv = np.linalg.inv(c)
        h = Isometry(cinv, -(cinv @ np.asarray(line.base)), unchecked=True)
        return NormalFormResult(HyperbolicNormalForm(frame.contraction, alpha), h)

    if cls.kind is IsometryKind.PARABOLIC:
        c = _parabolic_frame(g)
        x0 = c[:, 0]
        x2 = c[:, 2]
        tau = -bilinear(v, x0)
        shift = _solve_in_range(g - _IDENTITY, tau * x2 - v, float(np.linalg.norm(v)))
        cinv = np.linalg.inv(c)
        h = Isometry(cinv, -(cinv @ shift), unchecked=True)
        return NormalFormResult(ParabolicNormalForm(float(tau)), h)

    c = _elliptic_frame(g)
    cinv = J @ c.T @ J  # Lorentz inverse
    gp = cinv @ g @ c
    theta = math.atan2(gp[0, 1], gp[0, 0])
    if theta == -math.pi:
        theta = math.pi
    axis = c[:, 2]
    t = -bilinear(v, axis)
    shift = _solve_in_range(g - _IDENTITY, t * axis - v, float(np.linalg.norm(v)))
    h = Isometry(cinv, -(cinv @ shift), unchecked=True)
    return NormalFormResult(EllipticNormalForm(float(theta), float(t)), h)


def canonical_isometry(form: NormalForm) -> Isometry:
    """The canonical representative, in adapted coordinates.

    The hyperbolic and parabolic representatives act in bases where the
    coordinate expression of B is not the standard one, so they are
    constructed unchecked; the elliptic representative is a genuine
    standard-coordinates isometry.
    """
    if isinstance(form, HyperbolicNormalForm):
        lam = form.contraction
        g = np.diag([lam, 1.0 / lam, 1.0])
        return Isometry(g, (0.0, 0.0, form.alpha), unchecked=True)
    if isinstance(form, ParabolicNormalForm):
        return Isometry(PARABOLIC_SHEAR, (0.0, 0.0, form.tau), unchecked=True)
    if isinstance(form, EllipticNormalForm):
        return rotation_isometry(form.theta, form.t)
    raise TypeError(f"not a normal form: {form!r}")
