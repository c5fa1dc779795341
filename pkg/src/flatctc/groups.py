"""Finitely generated isometry groups: reduced-word enumeration, the
word/power search for timelike displacements, conjugate invariant
lines, and the two-generator torus-like fixture whose quotient has no
region free of closed timelike curves.

Enumeration is deterministic (length first, then lexicographic in the
letters g1, g1^-1, g2, g2^-1, ...), so searches return a canonical
minimal witness.  The search itself never verifies that the group acts
properly discontinuously; that is the caller's assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import NotHyperbolicError
from .isometry import (
    Isometry,
    InvariantLine,
    conjugate,
    identity_isometry,
    invariant_line,
)
from .minkowski import MPoint, MVec, bilinear
from .regions import Region, RegionLabel, make_power_scanner, region_of

__all__ = [
    "Word",
    "GroupPresentation",
    "CtcWitness",
    "enumerate_words",
    "group_ctc_search",
    "conjugate_invariant_line",
    "torus_example",
    "DEDUP_DECIMALS",
]

#: Matrix entries are rounded to this many decimals when hashing
#: elements to suppress coincidentally equal words.
DEDUP_DECIMALS = 12


@dataclass(frozen=True)
class Word:
    """Reduced word in the generators: letters are (index, exponent)
    pairs with exponent +1 or -1."""

    letters: tuple[tuple[int, int], ...]
    reduced: bool = field(init=False)

    def __post_init__(self):
        for idx, exp in self.letters:
            if exp not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1")
            if idx < 0:
                raise ValueError("generator indices must be nonnegative")
        ok = all(
            not (a[0] == b[0] and a[1] == -b[1])
            for a, b in zip(self.letters, self.letters[1:])
        )
        object.__setattr__(self, "reduced", ok)

    def __len__(self) -> int:
        return len(self.letters)

    def signed_indices(self) -> list[int]:
        """1-based signed indices, e.g. g1 g2^-1 -> [1, -2]."""
        return [(idx + 1) * exp for idx, exp in self.letters]

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        parts = []
        for idx, exp in self.letters:
            name = names[idx] if names is not None else f"g{idx + 1}"
            parts.append(name if exp == 1 else f"{name}^-1")
        return ".".join(parts)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class GroupPresentation:
    """Generators of a subgroup of the isometry group.

    ``assume_free`` skips element deduplication during enumeration;
    leave it False when the generators may satisfy relations.
    """

    generators: tuple[Isometry, ...]
    names: tuple[str, ...] = ()
    assume_free: bool = False

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("presentation needs at least one generator")
        for g in gens:
            if not g.in_identity_component:
                raise ValueError(
                    "generators must lie in the identity component of the "
                    "isometry group"
                )
        object.__setattr__(self, "generators", gens)
        names = tuple(self.names) or tuple(f"g{i + 1}" for i in range(len(gens)))
        if len(names) != len(gens):
            raise ValueError("one name per generator required")
        object.__setattr__(self, "names", names)

    def element(self, word: Word) -> Isometry:
        iso = identity_isometry()
        for idx, exp in word.letters:
            g = self.generators[idx]
            iso = iso.compose(g if exp == 1 else g.inverse())
        return iso

    def format_word(self, word: Word) -> str:
        return word.format(self.names)


@dataclass(frozen=True)
class CtcWitness:
    """A word and power whose displacement at ``point`` is timelike;
    re-verified with the direct region test on construction."""

    word: Word
    power: int
    element: Isometry
    point: MPoint

    def __post_init__(self):
        label = region_of(self.element, self.point, self.power)
        if label.region is not Region.T:
            raise ValueError(
                f"witness failed verification: region is {label.region.value}"
            )

    @property
    def displacement(self) -> MVec:
        return self.element.power(self.power)(self.point) - self.point

    @property
    def bvalue(self) -> float:
        d = self.displacement
        return bilinear(d, d)


def _dedup_key(iso: Isometry) -> tuple:
    g = np.round(iso.linear, DEDUP_DECIMALS) + 0.0  # normalize -0.0
    v = np.round(iso.translation, DEDUP_DECIMALS) + 0.0
    return tuple(g.ravel()) + tuple(v.ravel())


def enumerate_words(
    presentation: GroupPresentation, max_len: int
) -> Iterator[tuple[Word, Isometry]]:
    """All reduced words of length 1..max_len, each exactly once, in
    length-then-lexicographic order, with the letter alphabet ordered
    g1, g1^-1, g2, g2^-1, ...

    When ``assume_free`` is False, elements already seen (including the
    identity) are skipped via rounded-coefficient hashing.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    gens = presentation.generators
    alphabet: list[tuple[tuple[int, int], Isometry]] = []
    for i, g in enumerate(gens):
        alphabet.append(((i, 1), g))
        alphabet.append(((i, -1), g.inverse()))

    dedup = not presentation.assume_free
    seen = {_dedup_key(identity_isometry())} if dedup else None

    frontier: list[tuple[tuple[tuple[int, int], ...], Isometry]] = [
        ((), identity_isometry())
    ]
    for _ in range(max_len):
        next_frontier = []
        for letters, iso in frontier:
            for letter, gen in alphabet:
                if letters and letters[-1][0] == letter[0] and letters[-1][1] == -letter[1]:
                    continue
                new_letters = letters + (letter,)
                new_iso = iso.compose(gen)
                if dedup:
                    key = _dedup_key(new_iso)
                    if key in seen:
                        continue
                    seen.add(key)
                next_frontier.append((new_letters, new_iso))
                yield Word(new_letters), new_iso
        frontier = next_frontier


def group_ctc_search(
    presentation: GroupPresentation,
    p: MPoint,
    max_len: int,
    max_power: int,
    tol: Optional[float] = None,
) -> Optional[CtcWitness]:
    """First witness in enumeration order with p in T(w^n), n <= max_power.

    Hyperbolic, parabolic and elliptic words each use their closed-form
    power scan, so the per-word cost is far below iterating powers.
    Returns None when every word within the bounds is exhausted.
    """
    if max_len < 1 or max_power < 1:
        raise ValueError("search bounds must be at least 1")
    for word, iso in enumerate_words(presentation, max_len):
        scanner = make_power_scanner(iso, max_power, tol)
        n = scanner.first_timelike(p)
        if n is not None:
            return CtcWitness(word, n, iso, p)
    return None


def conjugate_invariant_line(
    gi: Isometry, gj: Isometry, tol: float = 1e-9
) -> InvariantLine:
    """Invariant line of gi gj gi^-1, computed both directly and by
    mapping the line of gj through gi; the two must agree within tol."""
    direct = invariant_line(conjugate(gj, gi))

    line_j = invariant_line(gj)  # raises NotHyperbolicError if gj is not
    mapped_base = gi(line_j.base)
    mapped_dir = gi.transform_vector(line_j.direction)

    dir_gap = (mapped_dir - direct.direction).norm()
    if dir_gap > tol * (1.0 + mapped_dir.norm()):
        raise ArithmeticError(
            f"conjugated line directions disagree by {dir_gap:.3e}"
        )
    offset = mapped_base - direct.base
    off_axis = offset - bilinear(offset, direct.direction) * direct.direction
    if off_axis.norm() > tol * (1.0 + offset.norm()):
        raise ArithmeticError(
            f"conjugated line base points disagree by {off_axis.norm():.3e}"
        )
    return direct


def torus_example() -> GroupPresentation:
    """Two boosts along a common axis with independent translations.

    The generators share eigenvectors but have distinct invariant
    lines; the group contains a lattice of pure translations (one of
    them timelike), and the quotient of the whole space has closed
    timelike curves through every point.  That the action is free and
    properly discontinuous is assumed, not checked.
    """
    s5 = math.sqrt(5.0)
    g1 = Isometry(
        [[1.0, 0.0, 0.0], [0.0, 1.5, -s5 / 2.0], [0.0, -s5 / 2.0, 1.5]],
        (1.0, 0.0, 0.0),
    )
    g2 = Isometry(
        [[1.0, 0.0, 0.0], [0.0, 3.5, -1.5 * s5], [0.0, -1.5 * s5, 3.5]],
        (2.0, 1.0 / s5, 1.0),
    )
    return GroupPresentation((g1, g2), ("g1", "g2"), assume_free=False)
