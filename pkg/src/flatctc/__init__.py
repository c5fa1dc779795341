"""flatctc: closed timelike curve regions in flat 3D Lorentz quotients.

Quotients of 3D Minkowski space by groups of affine isometries inherit
its causal structure; a point lies on a closed timelike curve exactly
when some group element displaces it in a timelike direction.  This
package classifies the isometries, evaluates the displacement regions
in closed form per class, searches words of finitely generated groups
for witnesses, rasters cross-sections, and builds certified smooth
closed timelike curves.
"""

from .errors import (
    FlatCtcError,
    FormatError,
    HasFixedPointError,
    IdentityInputError,
    NotClosedError,
    NotEllipticError,
    NotHyperbolicError,
    NotLorentzError,
    NotParabolicError,
    NotTimelikeDisplacementError,
    SingularMatrixError,
    TangentNotTimelikeError,
    WitnessBoundExceededError,
)
from .minkowski import (
    CausalClass,
    CausalKind,
    MPoint,
    MVec,
    ORIGIN,
    Orientation,
    bilinear,
    causal_class,
    lorentz_defect,
    orientation_det,
)
from .isometry import (
    EigenFrame,
    EllipticNormalForm,
    HyperbolicNormalForm,
    InvariantLine,
    Isometry,
    IsometryClass,
    IsometryKind,
    NormalFormResult,
    ParabolicNormalForm,
    boost_isometry,
    canonical_isometry,
    classify,
    conjugate,
    eigenframe,
    identity_isometry,
    invariant_line,
    margulis_alpha,
    normal_form,
    parabolic_isometry,
    rotation_isometry,
    translation_isometry,
)
from .regions import (
    HyperbolicRegionData,
    ParabolicSheet,
    Region,
    RegionLabel,
    boundary_band,
    displacement,
    elliptic_min_timelike_power,
    elliptic_witness_bound,
    hyperbolic_region_closed_form,
    hyperbolic_threshold,
    make_power_scanner,
    parabolic_displacement_closed_form,
    parabolic_region_closed_form,
    parabolic_sheet,
    parabolic_witness,
    region_of,
)
from .groups import (
    CtcWitness,
    GroupPresentation,
    Word,
    conjugate_invariant_line,
    enumerate_words,
    group_ctc_search,
    torus_example,
)
from .curves import (
    BumpPair,
    ClosureReport,
    CurveSample,
    bump_pair,
    certify_closed_in_quotient,
    curve_to_csv,
    piecewise_orbit_curve,
    smooth_orbit_curve,
    smooth_orbit_point,
)
from .raster import DEFAULT_COLORS, GridSpec, Raster, cross_section_raster

__version__ = "0.1.0"
