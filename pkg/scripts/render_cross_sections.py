#!/usr/bin/env python3
"""Render the standard cross-section gallery as SVG files.

Four views of where closed timelike curves live:

  misner_quadrants.svg   fixed-point boost: timelike region fills the
                         two quadrants between the stable planes
  boost_lobes_K.svg      fixed-point-free boost (torus generator g1):
                         lobes bounded by the power-K threshold curves
  parabolic_sheets.svg   fixed-point-free parabolic: nested sheet
                         interiors growing with the power bound
  torus_coverage_L.svg   two-generator group: timelike coverage as the
                         word length budget grows

Usage:
    python scripts/render_cross_sections.py --out-dir out [--res 128]
"""

import argparse
import math
import os

from flatctc import (
    GridSpec,
    MPoint,
    MVec,
    ORIGIN,
    boost_isometry,
    cross_section_raster,
    eigenframe,
    invariant_line,
    parabolic_isometry,
    torus_example,
)
from flatctc.isometry import PARABOLIC_BASIS


def eigenplane(iso, extent, res, powers):
    frame = eigenframe(iso.linear)
    base = invariant_line(iso).base
    return GridSpec(
        base,
        frame.x_minus,
        frame.x_plus,
        (-extent, extent),
        (-extent, extent),
        (res, res),
        powers,
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--res", type=int, default=128)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    res = args.res

    def emit(name, raster):
        path = os.path.join(args.out_dir, name)
        raster.to_svg(path)
        print(f"{path}: T={raster.count('T')} L={raster.count('L')} S={raster.count('S')}")

    boost = boost_isometry(math.acosh(1.5), 0.0)
    emit("misner_quadrants.svg", cross_section_raster(boost, eigenplane(boost, 3.0, res, 1), jobs=args.jobs))

    torus = torus_example()
    g1 = torus.generators[0]
    for powers in (1, 2, 3):
        emit(
            f"boost_lobes_{powers}.svg",
            cross_section_raster(g1, eigenplane(g1, 3.0, res, powers), jobs=args.jobs),
        )

    # parabolic sheets: sample the plane spanned by the spacelike and
    # null adapted directions through the origin
    rho = parabolic_isometry(1.0)
    grid = GridSpec(
        ORIGIN,
        MVec.from_array(PARABOLIC_BASIS[:, 1]),
        MVec.from_array(PARABOLIC_BASIS[:, 2]),
        (-6.0, 6.0),
        (-6.0, 6.0),
        (res, res),
        powers=4,
    )
    emit("parabolic_sheets.svg", cross_section_raster(rho, grid, jobs=args.jobs))

    for max_len in (1, 2, 3):
        emit(
            f"torus_coverage_{max_len}.svg",
            cross_section_raster(
                torus,
                eigenplane(g1, 5.0, res, 6),
                max_word_len=max_len,
                jobs=args.jobs,
            ),
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
