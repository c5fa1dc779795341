"""Cross-section rasters of causal regions.

A grid spec places a rectangular lattice of sample points on an affine
plane; every node gets a T / L / S label together with the minimal
witness (power for a single isometry, word and power for a group).
Evaluation is pure and node-independent, so rasters are byte-identical
no matter how many worker processes share the grid.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, TextIO, Union

import numpy as np

from .groups import GroupPresentation, enumerate_words
from .isometry import Isometry
from .minkowski import MPoint, MVec
from .regions import Region, make_power_scanner

__all__ = [
    "GridSpec",
    "Raster",
    "cross_section_raster",
    "DEFAULT_COLORS",
]

#: Fill colors for the SVG emitter, overridable per call.
DEFAULT_COLORS = {"T": "#d62728", "L": "#ffd166", "S": "#1f77b4"}


@dataclass(frozen=True)
class GridSpec:
    """Plane, ranges, resolution and power bound for one cross-section.

    Node (i, j) sits at base + u_i * u_axis + v_j * v_axis where u_i
    and v_j run through ``resolution`` evenly spaced values covering
    the closed ranges.
    """

    base: MPoint
    u_axis: MVec
    v_axis: MVec
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    resolution: tuple[int, int]
    powers: int = 1

    def __post_init__(self):
        nu, nv = self.resolution
        if nu < 2 or nv < 2:
            raise ValueError("resolution must be at least 2 in each direction")
        if self.powers < 1:
            raise ValueError("powers must be at least 1")

    def u_values(self) -> np.ndarray:
        return np.linspace(self.u_range[0], self.u_range[1], self.resolution[0])

    def v_values(self) -> np.ndarray:
        return np.linspace(self.v_range[0], self.v_range[1], self.resolution[1])

    def node(self, i: int, j: int) -> MPoint:
        u = float(self.u_values()[i])
        v = float(self.v_values()[j])
        return self.base + u * self.u_axis + v * self.v_axis


@dataclass(frozen=True)
class Raster:
    """Labels, witnesses and fixed-point flags on a grid."""

    grid: GridSpec
    labels: np.ndarray  # (nu, nv) of "T"/"L"/"S"
    witnesses: np.ndarray  # (nu, nv) object array of witness strings
    fixed_flags: np.ndarray  # (nu, nv) bool

    def count(self, label: str) -> int:
        return int((self.labels == label).sum())

    def to_csv(self, out: Union[str, TextIO]) -> None:
        """CSV with header i,j,u,v,label,witness (witness empty for S)."""
        uvals = self.grid.u_values()
        vvals = self.grid.v_values()
        rows = ["i,j,u,v,label,witness"]
        nu, nv = self.grid.resolution
        for i in range(nu):
            for j in range(nv):
                rows.append(
                    f"{i},{j},{float(uvals[i])!r},{float(vvals[j])!r},"
                    f"{self.labels[i, j]},{self.witnesses[i, j]}"
                )
        text = "\n".join(rows) + "\n"
        if isinstance(out, str):
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)

    def to_svg(
        self, out: Union[str, TextIO], colors: Optional[dict] = None
    ) -> None:
        """One unit rect per cell; u grows rightward, v grows upward."""
        palette = dict(DEFAULT_COLORS)
        if colors:
            palette.update(colors)
        nu, nv = self.grid.resolution
        parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{4 * nu}" '
            f'height="{4 * nv}" viewBox="0 0 {nu} {nv}" '
            'shape-rendering="crispEdges">',
        ]
        for i in range(nu):
            for j in range(nv):
                fill = palette[str(self.labels[i, j])]
                parts.append(
                    f'<rect x="{i}" y="{nv - 1 - j}" width="1" height="1" '
                    f'fill="{fill}"/>'
                )
        parts.append("</svg>")
        text = "\n".join(parts) + "\n"
        if isinstance(out, str):
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)


def _prepare_scanners(source, max_power: int, max_word_len: int, tol):
    """List of (witness prefix, scanner) in deterministic search order."""
    if isinstance(source, Isometry):
        return [("", make_power_scanner(source, max_power, tol))]
    if isinstance(source, GroupPresentation):
        prepared = []
        for word, iso in enumerate_words(source, max_word_len):
            prepared.append(
                (source.format_word(word) + ":", make_power_scanner(iso, max_power, tol))
            )
        return prepared
    raise TypeError("source must be an Isometry or a GroupPresentation")


def _scan_node(prepared, p: MPoint) -> tuple[str, str, bool]:
    """Label one node: first word (in order) with a timelike power wins;
    lightlike fallbacks keep the earliest word and power."""
    first_l = None
    for prefix, scanner in prepared:
        result = scanner.scan(p)
        if result.first_timelike is not None:
            return "T", f"{prefix}{result.first_timelike}", False
        if first_l is None and result.first_lightlike is not None:
            first_l = (
                f"{prefix}{result.first_lightlike}",
                result.lightlike_fixed,
            )
    if first_l is not None:
        return "L", first_l[0], first_l[1]
    return "S", "", False


def _raster_rows(args) -> list[tuple[int, list, list, list]]:
    """Worker: evaluate whole rows of the grid (picklable for pools)."""
    source, grid, max_word_len, tol, rows = args
    prepared = _prepare_scanners(source, grid.powers, max_word_len, tol)
    out = []
    for i in rows:
        labels, witnesses, fixed = [], [], []
        nv = grid.resolution[1]
        for j in range(nv):
            lab, wit, fix = _scan_node(prepared, grid.node(i, j))
            labels.append(lab)
            witnesses.append(wit)
            fixed.append(fix)
        out.append((i, labels, witnesses, fixed))
    return out


def cross_section_raster(
    source,
    grid: GridSpec,
    tol: Optional[float] = None,
    max_word_len: int = 3,
    jobs: int = 1,
) -> Raster:
    """Label every grid node by the minimal witness within the bounds.

    ``source`` is a single isometry (powers up to grid.powers, positive
    only since labels are power-sign symmetric) or a group presentation
    (reduced words up to ``max_word_len``, then powers).  ``jobs`` > 1
    splits rows across processes; the output is identical either way.
    """
    nu, nv = grid.resolution
    labels = np.empty((nu, nv), dtype="<U1")
    witnesses = np.empty((nu, nv), dtype=object)
    fixed = np.zeros((nu, nv), dtype=bool)

    all_rows = list(range(nu))
    if jobs <= 1:
        chunks = [_raster_rows((source, grid, max_word_len, tol, all_rows))]
    else:
        n_chunks = min(jobs * 4, nu)
        row_chunks = [all_rows[k::n_chunks] for k in range(n_chunks)]
        args = [(source, grid, max_word_len, tol, rows) for rows in row_chunks]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_raster_rows, args))

    for chunk in chunks:
        for i, lab_row, wit_row, fix_row in chunk:
            labels[i, :] = lab_row
            witnesses[i, :] = wit_row
            fixed[i, :] = fix_row
    return Raster(grid, labels, witnesses, fixed)
