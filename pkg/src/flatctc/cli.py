"""Command-line surface.

Subcommands: classify, region, cross-section, search, curve.  Inputs
come from JSON documents (see io module) or from builtin fixtures;
results go to stdout or to CSV/SVG files.  Diagnostics go to stderr.

Exit codes: 0 success, 1 search found no witness, 2 argument/parse
errors, 3 linear part outside the Lorentz group, 4 displacement not
timelike for curve construction.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from . import io as docio
from .curves import certify_closed_in_quotient, curve_to_csv, smooth_orbit_curve
from .errors import (
    FlatCtcError,
    FormatError,
    NotLorentzError,
    NotTimelikeDisplacementError,
)
from .groups import GroupPresentation, group_ctc_search, torus_example
from .isometry import (
    EllipticNormalForm,
    HyperbolicNormalForm,
    Isometry,
    IsometryKind,
    ParabolicNormalForm,
    boost_isometry,
    classify,
    eigenframe,
    identity_isometry,
    invariant_line,
    margulis_alpha,
    normal_form,
    parabolic_isometry,
    rotation_isometry,
    translation_isometry,
)
from .minkowski import MPoint, MVec, bilinear
from .raster import DEFAULT_COLORS, GridSpec, cross_section_raster
from .regions import displacement, region_of

EXIT_OK = 0
EXIT_NO_WITNESS = 1
EXIT_PARSE = 2
EXIT_NOT_LORENTZ = 3
EXIT_NOT_TIMELIKE = 4

_BUILTIN_HELP = (
    "builtin isometries: torus-gamma1, torus-gamma2, misner-boost, "
    "parabolic-tau (--tau), elliptic-theta-t (--theta, --t), identity, "
    "translation (--by X,Y,Z); builtin group: torus"
)


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_triple(text: str, what: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise _CliError(f"{what} must be three comma-separated numbers", EXIT_PARSE)
    try:
        x, y, z = (float(t) for t in parts)
    except ValueError:
        raise _CliError(f"{what} must be numeric: {text!r}", EXIT_PARSE)
    return x, y, z


def _builtin_isometry(name: str, args) -> Isometry:
    torus = torus_example()
    if name == "torus-gamma1":
        return torus.generators[0]
    if name == "torus-gamma2":
        return torus.generators[1]
    if name == "misner-boost":
        return boost_isometry(math.acosh(1.5), 0.0)
    if name == "parabolic-tau":
        return parabolic_isometry(args.tau)
    if name == "elliptic-theta-t":
        return rotation_isometry(args.theta, args.t)
    if name == "identity":
        return identity_isometry()
    if name == "translation":
        return translation_isometry(_parse_triple(args.by, "--by"))
    raise _CliError(f"unknown builtin {name!r}; {_BUILTIN_HELP}", EXIT_PARSE)


def _resolve_isometry(args) -> Isometry:
    if getattr(args, "builtin", None):
        return _builtin_isometry(args.builtin, args)
    if getattr(args, "isometry", None):
        try:
            return docio.load_isometry(args.isometry)
        except FormatError as exc:
            raise _CliError(str(exc), EXIT_PARSE)
        except NotLorentzError as exc:
            raise _CliError(str(exc), EXIT_NOT_LORENTZ)
    raise _CliError("provide --isometry FILE or --builtin NAME", EXIT_PARSE)


def _resolve_group(args) -> GroupPresentation:
    if getattr(args, "builtin", None):
        if args.builtin == "torus":
            return torus_example()
        raise _CliError(
            f"unknown builtin group {args.builtin!r}; only 'torus' exists",
            EXIT_PARSE,
        )
    if getattr(args, "group", None):
        try:
            return docio.load_group(args.group)
        except FormatError as exc:
            raise _CliError(str(exc), EXIT_PARSE)
        except (NotLorentzError, ValueError) as exc:
            raise _CliError(str(exc), EXIT_NOT_LORENTZ)
    raise _CliError("provide --group FILE or --builtin torus", EXIT_PARSE)


def _fmt_vec(v) -> str:
    return f"({v.x!r}, {v.y!r}, {v.z!r})"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args) -> int:
    iso = _resolve_isometry(args)
    cls = classify(iso)
    lines = [f"class: {cls.kind.value}"]
    lines.append(f"trace: {cls.trace!r}")
    lines.append(f"fixed-point: {cls.fixed_set if cls.has_fixed_point else 'none'}")
    if cls.marginal:
        lines.append("marginal: trace within 10 band-widths of the parabolic cutoff")
    if cls.kind is not IsometryKind.IDENTITY:
        form = normal_form(iso).form
        if isinstance(form, HyperbolicNormalForm):
            line = invariant_line(iso)
            lines.append(f"lambda: {form.contraction!r}")
            lines.append(f"alpha: {form.alpha!r}")
            lines.append(f"invariant-line-base: {_fmt_vec(line.base)}")
            lines.append(f"invariant-line-direction: {_fmt_vec(line.direction)}")
        elif isinstance(form, ParabolicNormalForm):
            lines.append(f"tau: {form.tau!r}")
        elif isinstance(form, EllipticNormalForm):
            lines.append(f"theta: {form.theta!r}")
            lines.append(f"t: {form.t!r}")
    print("\n".join(lines))
    return EXIT_OK


def _cmd_region(args) -> int:
    iso = _resolve_isometry(args)
    p = MPoint(*_parse_triple(args.point, "--point"))
    label = region_of(iso, p, args.power, args.tol)
    d = displacement(iso.power(args.power), p)
    b = bilinear(d, d)
    flag = " fixed-point" if label.fixed_point else ""
    print(
        f"{label.region.value} power={label.power} B={b!r} "
        f"displacement={_fmt_vec(d)}{flag}"
    )
    return EXIT_OK


def _parse_plane(args, source) -> tuple[MPoint, MVec, MVec]:
    spec = args.plane
    if spec == "eigenplane":
        iso = None
        if isinstance(source, GroupPresentation):
            for gen in source.generators:
                if classify(gen).kind is IsometryKind.HYPERBOLIC:
                    iso = gen
                    break
            if iso is None:
                raise _CliError(
                    "eigenplane needs a hyperbolic generator", EXIT_PARSE
                )
        else:
            if classify(source).kind is not IsometryKind.HYPERBOLIC:
                raise _CliError(
                    "eigenplane needs a hyperbolic isometry", EXIT_PARSE
                )
            iso = source
        frame = eigenframe(iso.linear)
        base = invariant_line(iso).base
        return base, frame.x_minus, frame.x_plus
    fields = {}
    for chunk in spec.split(";"):
        if "=" not in chunk:
            raise _CliError(
                "plane spec is 'base=X,Y,Z;u=X,Y,Z;v=X,Y,Z' or 'eigenplane'",
                EXIT_PARSE,
            )
        key, _, value = chunk.partition("=")
        fields[key.strip()] = value.strip()
    missing = {"base", "u", "v"} - set(fields)
    if missing:
        raise _CliError(f"plane spec missing {sorted(missing)}", EXIT_PARSE)
    base = MPoint(*_parse_triple(fields["base"], "plane base"))
    u = MVec(*_parse_triple(fields["u"], "plane u"))
    v = MVec(*_parse_triple(fields["v"], "plane v"))
    return base, u, v


def _parse_range(text: str) -> tuple[tuple[float, float], tuple[float, float]]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _CliError("--range must be 'U0:U1,V0:V1'", EXIT_PARSE)
    out = []
    for part in parts:
        lo, sep, hi = part.partition(":")
        if not sep:
            raise _CliError("--range must be 'U0:U1,V0:V1'", EXIT_PARSE)
        try:
            out.append((float(lo), float(hi)))
        except ValueError:
            raise _CliError(f"bad range endpoint in {part!r}", EXIT_PARSE)
    return out[0], out[1]


def _cmd_cross_section(args) -> int:
    if args.group or args.builtin == "torus":
        source = _resolve_group(args)
    else:
        source = _resolve_isometry(args)
    base, u_axis, v_axis = _parse_plane(args, source)
    u_range, v_range = _parse_range(args.range)
    try:
        nu, nv = (int(t) for t in args.res.split(","))
    except ValueError:
        raise _CliError("--res must be 'N,M'", EXIT_PARSE)
    grid = GridSpec(base, u_axis, v_axis, u_range, v_range, (nu, nv), args.max_power)
    raster = cross_section_raster(
        source,
        grid,
        max_word_len=args.max_word_len,
        jobs=args.jobs,
    )
    out = args.out
    colors = {
        "T": args.color_t,
        "L": args.color_l,
        "S": args.color_s,
    }
    if out.endswith(".svg"):
        raster.to_svg(out, colors)
    elif out.endswith(".csv"):
        raster.to_csv(out)
    else:
        raise _CliError("--out must end in .csv or .svg", EXIT_PARSE)
    print(out)
    return EXIT_OK


def _cmd_search(args) -> int:
    group = _resolve_group(args)
    p = MPoint(*_parse_triple(args.point, "--point"))
    witness = group_ctc_search(group, p, args.max_word_len, args.max_power)
    if witness is None:
        print("none")
        return EXIT_NO_WITNESS
    record = docio.witness_to_dict(witness)
    record["word_text"] = group.format_word(witness.word)
    print(json.dumps(record))
    return EXIT_OK


def _cmd_curve(args) -> int:
    iso = _resolve_isometry(args)
    p = MPoint(*_parse_triple(args.point, "--point"))
    try:
        samples = smooth_orbit_curve(iso, p, args.epsilon, args.samples)
    except NotTimelikeDisplacementError as exc:
        raise _CliError(str(exc), EXIT_NOT_TIMELIKE)
    report = certify_closed_in_quotient(iso, samples)
    curve_to_csv(samples, args.out, report)
    print(args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_isometry_args(sub, with_builtin_group=False):
    sub.add_argument("--isometry", help="isometry JSON document")
    sub.add_argument("--builtin", help=_BUILTIN_HELP)
    sub.add_argument("--tau", type=float, default=1.0, help="parabolic-tau parameter")
    sub.add_argument(
        "--theta", type=float, default=math.pi / 2, help="elliptic rotation angle"
    )
    sub.add_argument("--t", type=float, default=1.0, help="elliptic axis step")
    sub.add_argument("--by", default="0,0,1", help="translation vector X,Y,Z")
    if with_builtin_group:
        sub.add_argument("--group", help="group JSON document (array of isometries)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatctc",
        description=(
            "Classify affine isometries of 3D Minkowski space and map the "
            "closed-timelike-curve regions of their quotient spacetimes."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="classify an isometry")
    _add_isometry_args(sub)
    sub.set_defaults(func=_cmd_classify)

    sub = subs.add_parser("region", help="causal region of one point")
    _add_isometry_args(sub)
    sub.add_argument("--point", required=True, help="X,Y,Z")
    sub.add_argument("--power", type=int, default=1)
    sub.add_argument("--tol", type=float, default=None)
    sub.set_defaults(func=_cmd_region)

    sub = subs.add_parser("cross-section", help="raster a plane of points")
    _add_isometry_args(sub, with_builtin_group=True)
    sub.add_argument(
        "--plane",
        default="eigenplane",
        help="'base=X,Y,Z;u=X,Y,Z;v=X,Y,Z' or 'eigenplane'",
    )
    sub.add_argument("--range", default="-5:5,-5:5", help="U0:U1,V0:V1")
    sub.add_argument("--res", default="64,64", help="N,M grid resolution")
    sub.add_argument("--max-power", type=int, default=5)
    sub.add_argument("--max-word-len", type=int, default=3)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--out", required=True, help="output .csv or .svg path")
    sub.add_argument("--color-t", default=DEFAULT_COLORS["T"])
    sub.add_argument("--color-l", default=DEFAULT_COLORS["L"])
    sub.add_argument("--color-s", default=DEFAULT_COLORS["S"])
    sub.set_defaults(func=_cmd_cross_section)

    sub = subs.add_parser("search", help="find a word/power witness")
    sub.add_argument("--group", help="group JSON document")
    sub.add_argument("--builtin", help="builtin group: torus")
    sub.add_argument("--point", required=True, help="X,Y,Z")
    sub.add_argument("--max-word-len", type=int, default=4)
    sub.add_argument("--max-power", type=int, default=32)
    sub.set_defaults(func=_cmd_search)

    sub = subs.add_parser("curve", help="export a smooth closed timelike curve")
    _add_isometry_args(sub)
    sub.add_argument("--point", required=True, help="X,Y,Z")
    sub.add_argument("--epsilon", type=float, default=0.1)
    sub.add_argument("--samples", type=int, default=200, help="samples per unit")
    sub.add_argument("--out", required=True, help="output .csv path")
    sub.set_defaults(func=_cmd_curve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except NotLorentzError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_LORENTZ
    except FormatError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    except FlatCtcError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
