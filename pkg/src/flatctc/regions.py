"""Causal character of displacement vectors and closed-form region tests.

For an isometry gamma the space splits into T / L / S regions according
to whether B(gamma^n(p) - p, .) is timelike, lightlike or spacelike.
``region_of`` evaluates this directly (the oracle route); the rest of
the module provides the per-class closed forms:

* hyperbolic: the product of the contracting/expanding frame
  coordinates against the threshold -(n*alpha)^2 / (2(1-lam^n)(lam^-n-1));
* parabolic without fixed points: paraboloidal sheets whose offset
  grows like (n^2 - 1)/12;
* parabolic with fixed points and elliptic: displacement confined to a
  null or spacelike plane, so membership reduces to plane distances and
  rotation angles.

Closed forms and the direct route classify against the same B-value
tolerance band, so they agree everywhere except within floating noise
of the band edge.  All functions are pure; evaluation order never
affects results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (
    HasFixedPointError,
    NotEllipticError,
    NotHyperbolicError,
    NotParabolicError,
    WitnessBoundExceededError,
)
from .isometry import (
    EigenFrame,
    InvariantLine,
    Isometry,
    IsometryKind,
    ParabolicNormalForm,
    EllipticNormalForm,
    classify,
    eigenframe,
    invariant_line,
    margulis_alpha,
    normal_form,
)
from .minkowski import (
    CausalKind,
    MPoint,
    MVec,
    bilinear,
    causal_class,
)

__all__ = [
    "Region",
    "RegionLabel",
    "boundary_band",
    "displacement",
    "region_of",
    "HyperbolicRegionData",
    "hyperbolic_threshold",
    "hyperbolic_region_closed_form",
    "ParabolicSheet",
    "parabolic_displacement_closed_form",
    "parabolic_sheet",
    "parabolic_region_closed_form",
    "parabolic_witness",
    "elliptic_witness_bound",
    "elliptic_min_timelike_power",
    "make_power_scanner",
]

_SQRT2 = math.sqrt(2.0)
_BAND_COEFF = 1e-9


class Region(Enum):
    T = "T"
    L = "L"
    S = "S"


@dataclass(frozen=True)
class RegionLabel:
    """Causal region of a displacement vector, tagged with the power
    that produced it.  Zero displacements land in L with the
    ``fixed_point`` flag set."""

    region: Region
    power: int
    fixed_point: bool = False


def boundary_band(p: MPoint) -> float:
    """Default L-band half width at a point: quadratic forms scale with
    the squared size of the point, so the band does too."""
    a = np.asarray(p)
    return _BAND_COEFF * (1.0 + float(a @ a))


def displacement(iso: Isometry, p: MPoint) -> MVec:
    """gamma(p) - p."""
    return iso(p) - p


def _label_from_bvalue(
    q: float, band: float, n: int, components: Sequence[float]
) -> RegionLabel:
    """Classify a closed-form B-value with the same semantics as
    ``causal_class``: ``components`` approximate the displacement in
    standard coordinates and decide the zero (fixed point) flag."""
    if q < -band:
        return RegionLabel(Region.T, n)
    if q > band:
        return RegionLabel(Region.S, n)
    fixed = max(abs(c) for c in components) <= band
    return RegionLabel(Region.L, n, fixed)


def region_of(
    iso: Isometry, p: MPoint, n: int = 1, tol: Optional[float] = None
) -> RegionLabel:
    """Direct evaluation: causal class of the displacement of gamma^n."""
    n = int(n)
    if n == 0:
        raise ValueError("power must be nonzero")
    band = boundary_band(p) if tol is None else float(tol)
    d = displacement(iso.power(n), p)
    cc = causal_class(d, band)
    if cc.kind is CausalKind.TIMELIKE:
        return RegionLabel(Region.T, n)
    if cc.kind is CausalKind.SPACELIKE:
        return RegionLabel(Region.S, n)
    return RegionLabel(Region.L, n, cc.kind is CausalKind.ZERO)


# ---------------------------------------------------------------------------
# hyperbolic closed form


class HyperbolicRegionData:
    """Prepared frame data for the closed-form hyperbolic region test.

    In frame coordinates relative to the invariant line,
    B(d_n, d_n) = 2 D_n p_- p_+ + (n alpha)^2 with
    D_n = (1 - lam^n)(lam^-n - 1), so membership in T reduces to
    comparing p_- p_+ with ``threshold(n)``.
    """

    def __init__(self, frame: EigenFrame, line: InvariantLine, alpha: float):
        self.frame = frame
        self.line = line
        self.alpha = float(alpha)
        self._log_lam = math.log(frame.contraction)

    @classmethod
    def from_isometry(cls, iso: Isometry) -> "HyperbolicRegionData":
        return cls(eigenframe(iso.linear), invariant_line(iso), margulis_alpha(iso))

    @property
    def contraction(self) -> float:
        return self.frame.contraction

    def eigencoords(self, p: MPoint) -> tuple[float, float, float]:
        """Frame coordinates of p relative to the invariant line base."""
        return self.frame.coords(p - self.line.base)

    def denom(self, n: int) -> float:
        """D_n = (1 - lam^n)(lam^-n - 1) > 0; overflow-safe for large n."""
        if n == 0:
            raise ValueError("power must be nonzero")
        if abs(n) * abs(self._log_lam) > 700.0:
            return math.inf
        ln = self.contraction ** n
        return (1.0 - ln) * (1.0 / ln - 1.0)

    def threshold(self, n: int) -> float:
        """Right-hand side of the region inequality for gamma^n; strictly
        negative when alpha is nonzero and tending to 0 as n grows."""
        na = n * self.alpha
        if na == 0.0:
            return 0.0
        d = self.denom(n)
        if math.isinf(d):
            return 0.0
        return -(na * na) / (2.0 * d)

    def bvalue(self, p: MPoint, n: int) -> float:
        pm, pp, _ = self.eigencoords(p)
        return self.bvalue_from_coords(pm, pp, n)

    def bvalue_from_coords(self, pm: float, pp: float, n: int) -> float:
        na2 = (n * self.alpha) ** 2
        prod = pm * pp
        if prod == 0.0:
            return na2
        return 2.0 * self.denom(n) * prod + na2

    def _components(self, pm: float, pp: float, n: int) -> np.ndarray:
        """Displacement of gamma^n in standard coordinates, reconstructed
        from frame coordinates (used only for the zero/fixed flag)."""
        ln = self.contraction ** n if abs(n) * abs(self._log_lam) <= 700.0 else 0.0
        dm = (ln - 1.0) * pm if pm != 0.0 else 0.0
        dp = ((1.0 / ln) - 1.0) * pp if (pp != 0.0 and ln != 0.0) else (0.0 if pp == 0.0 else math.inf)
        return self.frame.matrix @ np.array([dm, dp, n * self.alpha])

    def region(self, p: MPoint, n: int = 1, tol: Optional[float] = None) -> RegionLabel:
        band = boundary_band(p) if tol is None else float(tol)
        pm, pp, _ = self.eigencoords(p)
        q = self.bvalue_from_coords(pm, pp, n)
        return _label_from_bvalue(q, band, n, self._components(pm, pp, n))


def hyperbolic_threshold(iso: Isometry, n: int) -> float:
    """Threshold for p_- p_+ below which p lies in T(gamma^n)."""
    if n == 0:
        raise ValueError("power must be nonzero")
    return HyperbolicRegionData.from_isometry(iso).threshold(n)


def hyperbolic_region_closed_form(
    iso: Isometry, p: MPoint, n: int = 1, tol: Optional[float] = None
) -> RegionLabel:
    """Region label from the frame-coordinate product test; agrees with
    ``region_of`` away from the tolerance band."""
    if n == 0:
        raise ValueError("power must be nonzero")
    return HyperbolicRegionData.from_isometry(iso).region(p, n, tol)


# ---------------------------------------------------------------------------
# parabolic closed form (adapted coordinates; tau is the translation
# component along the null direction x2)


def _sums(n: int) -> tuple[float, float]:
    """(sum of i, sum of i^2) for i = 1 .. n-1."""
    m = n - 1
    return m * n / 2.0, m * n * (2 * n - 1) / 6.0


def parabolic_displacement_closed_form(tau: float, n: int, p) -> np.ndarray:
    """Displacement of the n-th power in adapted coordinates (p0, p1, p2),
    evaluated in closed form:

        (n sqrt2 p1 + n^2 p2 + tau * sum i^2,
         n sqrt2 p2 + sqrt2 tau * sum i,
         n tau)

    with both sums over i = 1 .. n-1.  Matches the n-fold iterated
    action to floating precision.
    """
    if n < 1:
        raise ValueError("power must be at least 1")
    if tau == 0:
        raise ValueError("tau must be nonzero")
    p0, p1, p2 = (float(t) for t in np.asarray(p, dtype=float).reshape(3))
    del p0  # the first coordinate never feeds back into the displacement
    s1, s2 = _sums(n)
    return np.array(
        [
            n * _SQRT2 * p1 + n * n * p2 + tau * s2,
            n * _SQRT2 * p2 + _SQRT2 * tau * s1,
            n * tau,
        ]
    )


@dataclass(frozen=True)
class ParabolicSheet:
    """Lightlike boundary sheet of the n-th power in adapted coordinates:
    p1 = (p2^2 - tau p2)/(sqrt2 tau) + offset, with
    offset = -tau (n^2 - 1) / (12 sqrt2).  The offset vanishes at n = 1."""

    tau: float
    n: int
    offset: float

    def p1_at(self, p2: float) -> float:
        return (p2 * p2 - self.tau * p2) / (_SQRT2 * self.tau) + self.offset


def parabolic_sheet(tau: float, n: int) -> ParabolicSheet:
    tau = float(tau)
    if tau == 0.0:
        raise ValueError("tau must be nonzero")
    n = int(n)
    if n < 1:
        raise ValueError("power must be at least 1")
    offset = -tau * (n * n - 1) / (12.0 * _SQRT2)
    return ParabolicSheet(tau, n, offset)


def _parabolic_bvalue(tau: float, n: int, p1: float, p2: float) -> float:
    """B(d_n, d_n) in adapted coordinates: 2 n^2 (K - tau^2 (n^2-1)/12)
    with K = p2^2 - tau p2 - sqrt2 tau p1."""
    k = p2 * p2 - tau * p2 - _SQRT2 * tau * p1
    return 2.0 * n * n * (k - tau * tau * (n * n - 1) / 12.0)


def parabolic_region_closed_form(
    tau: float, n: int, p, tol: Optional[float] = None
) -> RegionLabel:
    """Sheet-side test in adapted coordinates; T lies above the sheet for
    tau > 0 and below it for tau < 0.  Agrees with ``region_of`` under
    the adapted form -p0 q2 + p1 q1 - p2 q0."""
    tau = float(tau)
    if tau == 0.0:
        raise ValueError("tau must be nonzero")
    n = int(n)
    if n < 1:
        raise ValueError("power must be at least 1")
    a = np.asarray(p, dtype=float).reshape(3)
    band = _BAND_COEFF * (1.0 + float(a @ a)) if tol is None else float(tol)
    q = _parabolic_bvalue(tau, n, a[1], a[2])
    # d2 = n tau never vanishes, so the zero flag can never fire
    return _label_from_bvalue(q, band, n, (abs(n * tau),))


class _ParabolicFrameData:
    """Adapted frame of a raw parabolic isometry: basis matrix, origin
    shift, and tau."""

    def __init__(self, iso: Isometry):
        cls = classify(iso)
        if cls.kind is not IsometryKind.PARABOLIC:
            raise NotParabolicError(f"isometry is {cls.kind.value}, not parabolic")
        self.has_fixed_point = cls.has_fixed_point
        nf = normal_form(iso)
        form = nf.form
        assert isinstance(form, ParabolicNormalForm)
        self.tau = form.tau
        self._h = nf.to_adapted

    def adapted(self, p: MPoint) -> np.ndarray:
        return np.asarray(self._h(p))


def parabolic_witness(
    rho: Isometry, p: MPoint, tol: Optional[float] = None
) -> int:
    """Least n >= 1 with p in T(rho^n) for a fixed-point-free parabolic.

    The sheet inequality tau^2 (n^2 - 1)/12 > p2^2 - tau p2 - sqrt2 tau p1
    is solved for n in closed form, then the candidate is verified (and
    nudged past the tolerance band if needed) with ``region_of``.
    """
    data = _ParabolicFrameData(rho)
    if data.has_fixed_point:
        raise HasFixedPointError(
            "parabolic isometry has fixed points; its timelike region is empty"
        )
    tau = data.tau
    a = data.adapted(p)
    k = a[2] * a[2] - tau * a[2] - _SQRT2 * tau * a[1]
    if k < 0:
        n = 1
    else:
        n = max(1, math.ceil(math.sqrt(12.0 * k / (tau * tau) + 1.0)))
        while _parabolic_bvalue(tau, n, a[1], a[2]) >= 0.0:
            n += 1
    while region_of(rho, p, n, tol).region is not Region.T:
        n += 1
    return n


# ---------------------------------------------------------------------------
# elliptic closed form


class _EllipticFrameData:
    """Axis frame of a raw elliptic isometry: rotation angle, axis step,
    and the map to axis-adapted coordinates."""

    def __init__(self, iso: Isometry):
        cls = classify(iso)
        if cls.kind is not IsometryKind.ELLIPTIC:
            raise NotEllipticError(f"isometry is {cls.kind.value}, not elliptic")
        nf = normal_form(iso)
        form = nf.form
        assert isinstance(form, EllipticNormalForm)
        self.theta = form.theta
        self.t = form.t
        self._h = nf.to_adapted

    def adapted(self, p: MPoint) -> np.ndarray:
        return np.asarray(self._h(p))

    def axis_distance(self, p: MPoint) -> float:
        a = self.adapted(p)
        return math.hypot(a[0], a[1])


def elliptic_witness_bound(iso_or_data, p: MPoint) -> int:
    """Power bound guaranteed to contain a timelike witness for an
    elliptic isometry with a nonzero axis step: the spatial displacement
    never exceeds twice the axis distance while the axis displacement
    grows linearly, so any k with k|t| > 2r works."""
    data = (
        iso_or_data
        if isinstance(iso_or_data, _EllipticFrameData)
        else _EllipticFrameData(iso_or_data)
    )
    if data.t == 0.0:
        raise HasFixedPointError("axis step is zero; no witness bound exists")
    r = data.axis_distance(p)
    return math.ceil(2.0 * r / abs(data.t)) + 4


def elliptic_min_timelike_power(
    iso: Isometry,
    p: MPoint,
    n_max: Optional[int] = None,
    tol: Optional[float] = None,
) -> Optional[int]:
    """Least k in [1, n_max] with a timelike displacement, or None when
    the axis step vanishes (the displacement then stays in a spacelike
    plane, so no power ever works).

    Raises WitnessBoundExceededError when a caller-supplied n_max is too
    small; the error reports the analytic bound.
    """
    data = _EllipticFrameData(iso)
    if data.t == 0.0:
        return None
    bound = elliptic_witness_bound(data, p)
    if n_max is None:
        n_max = bound
    band = boundary_band(p) if tol is None else float(tol)
    a = data.adapted(p)
    r2 = a[0] * a[0] + a[1] * a[1]
    for k in range(1, int(n_max) + 1):
        spatial = 2.0 * (1.0 - math.cos(k * data.theta)) * r2
        q = spatial - (k * data.t) ** 2
        if q < -band:
            return k
    raise WitnessBoundExceededError(
        f"no timelike power at or below n_max={n_max}", bound
    )


# ---------------------------------------------------------------------------
# power scanners: per-class engines that report, for one point, the first
# power whose displacement is timelike (plus lightlike fallbacks).  The
# word search and the raster share these.


@dataclass(frozen=True)
class ScanResult:
    first_timelike: Optional[int]
    first_lightlike: Optional[int]
    lightlike_fixed: bool

    def label(self) -> RegionLabel:
        if self.first_timelike is not None:
            return RegionLabel(Region.T, self.first_timelike)
        if self.first_lightlike is not None:
            return RegionLabel(Region.L, self.first_lightlike, self.lightlike_fixed)
        return RegionLabel(Region.S, 1)


class _ScannerBase:
    """Scans powers 1..max_n with per-class closed-form B-values.

    Negative powers are skipped: the displacement of gamma^-n is the
    image of that of gamma^n under -g^-n, so B-values and labels are
    symmetric in the sign of the power.
    """

    def __init__(self, max_n: int, tol: Optional[float]):
        if max_n < 1:
            raise ValueError("max_n must be at least 1")
        self.max_n = int(max_n)
        self.tol = tol

    def _band(self, p: MPoint) -> float:
        return boundary_band(p) if self.tol is None else float(self.tol)

    def _bvalues(self, p: MPoint):
        raise NotImplementedError

    def _is_zero(self, n: int, band: float) -> bool:
        raise NotImplementedError

    def scan(self, p: MPoint) -> ScanResult:
        band = self._band(p)
        first_l = None
        fixed = False
        for n, q in self._bvalues(p):
            if q < -band:
                return ScanResult(n, first_l, fixed)
            if first_l is None and abs(q) <= band:
                first_l = n
                fixed = self._is_zero(n, band)
        return ScanResult(None, first_l, fixed)

    def first_timelike(self, p: MPoint) -> Optional[int]:
        return self.scan(p).first_timelike


class _TranslationScanner(_ScannerBase):
    def __init__(self, iso: Isometry, max_n: int, tol: Optional[float]):
        super().__init__(max_n, tol)
        self._v = np.array(iso.translation)
        self._b = bilinear(self._v, self._v)

    def _bvalues(self, p: MPoint):
        for n in range(1, self.max_n + 1):
            yield n, n * n * self._b

    def _is_zero(self, n: int, band: float) -> bool:
        return float(np.max(np.abs(self._v))) * n <= band


class _HyperbolicScanner(_ScannerBase):
    def __init__(self, iso: Isometry, max_n: int, tol: Optional[float]):
        super().__init__(max_n, tol)
        self.data = HyperbolicRegionData.from_isometry(iso)
        self._twod = [2.0 * self.data.denom(n) for n in range(1, max_n + 1)]
        alpha = self.data.alpha
        self._na2 = [(n * alpha) ** 2 for n in range(1, max_n + 1)]

    def _bvalues(self, p: MPoint):
        pm, pp, _ = self.data.eigencoords(p)
        self._pm, self._pp = pm, pp
        prod = pm * pp
        if prod == 0.0:
            for n in range(1, self.max_n + 1):
                yield n, self._na2[n - 1]
        else:
            for n in range(1, self.max_n + 1):
                yield n, self._twod[n - 1] * prod + self._na2[n - 1]

    def _is_zero(self, n: int, band: float) -> bool:
        comps = self.data._components(self._pm, self._pp, n)
        return float(np.max(np.abs(comps))) <= band


class _ParabolicFixedScanner(_ScannerBase):
    """Fixed-point parabolic: the displacement stays in the null plane of
    the fixed direction, so B-values reduce to 2 n^2 q2^2 >= 0 and no
    power is ever timelike."""

    def __init__(self, iso: Isometry, max_n: int, tol: Optional[float]):
        super().__init__(max_n, tol)
        self.data = _ParabolicFrameData(iso)

    def _bvalues(self, p: MPoint):
        a = self.data.adapted(p)
        self._a = a
        q22 = 2.0 * a[2] * a[2]
        for n in range(1, self.max_n + 1):
            yield n, n * n * q22

    def _is_zero(self, n: int, band: float) -> bool:
        a = self._a
        d0 = n * _SQRT2 * a[1] + n * n * a[2]
        d1 = n * _SQRT2 * a[2]
        return max(abs(d0), abs(d1)) <= band


class _ParabolicFreeScanner(_ScannerBase):
    def __init__(self, iso: Isometry, max_n: int, tol: Optional[float]):
        super().__init__(max_n, tol)
        self.data = _ParabolicFrameData(iso)
        tau = self.data.tau
        self._off = [tau * tau * (n * n - 1) / 12.0 for n in range(1, max_n + 1)]

    def _bvalues(self, p: MPoint):
        a = self.data.adapted(p)
        tau = self.data.tau
        k = a[2] * a[2] - tau * a[2] - _SQRT2 * tau * a[1]
        for n in range(1, self.max_n + 1):
            yield n, 2.0 * n * n * (k - self._off[n - 1])

    def _is_zero(self, n: int, band: float) -> bool:
        return False  # the axis displacement n*tau never vanishes


class _EllipticScanner(_ScannerBase):
    def __init__(self, iso: Isometry, max_n: int, tol: Optional[float]):
        super().__init__(max_n, tol)
        self.data = _EllipticFrameData(iso)
        th, t = self.data.theta, self.data.t
        self._spatial = [2.0 * (1.0 - math.cos(k * th)) for k in range(1, max_n + 1)]
        self._kt2 = [(k * t) ** 2 for k in range(1, max_n + 1)]

    def _bvalues(self, p: MPoint):
        a = self.data.adapted(p)
        self._r2 = a[0] * a[0] + a[1] * a[1]
        for k in range(1, self.max_n + 1):
            yield k, self._spatial[k - 1] * self._r2 - self._kt2[k - 1]

    def _is_zero(self, k: int, band: float) -> bool:
        return (
            self._spatial[k - 1] * self._r2 <= band * band
            and abs(k * self.data.t) <= band
        )


def make_power_scanner(
    iso: Isometry, max_n: int, tol: Optional[float] = None
) -> _ScannerBase:
    """Build the closed-form power scanner matching the class of ``iso``."""
    cls = classify(iso)
    if cls.kind is IsometryKind.IDENTITY:
        return _TranslationScanner(iso, max_n, tol)
    if cls.kind is IsometryKind.HYPERBOLIC:
        return _HyperbolicScanner(iso, max_n, tol)
    if cls.kind is IsometryKind.PARABOLIC:
        if cls.has_fixed_point:
            return _ParabolicFixedScanner(iso, max_n, tol)
        return _ParabolicFreeScanner(iso, max_n, tol)
    return _EllipticScanner(iso, max_n, tol)
