"""Tau functions, graded roots and their F_2[U]-module structure.

A root is stored by the critical word of its tau function: the alternating
sequence of local minima and maxima, starting and ending at a minimum.  The
tree itself is only rebuilt on demand (export, module oracle).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .exceptions import InputError, ValidationError
from .semigroup import DeltaSequence


@dataclass(frozen=True)
class TauProfile:
    """Critical word of a tau function.

    ``critical`` alternates min, max, ..., min.  ``terminal`` is the level
    where the profile ends; it exceeds the last minimum when the sequence
    finishes on an ascent (windows do).  ``anchor`` is the position of the
    first critical point and ``positions``, when known, lists the position
    at which each critical value is first attained.
    """

    critical: tuple[int, ...]
    terminal: int
    anchor: int = 0
    positions: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        w = tuple(int(v) for v in self.critical)
        object.__setattr__(self, "critical", w)
        if not w or len(w) % 2 == 0:
            raise ValidationError("critical word must have odd length")
        for i in range(1, len(w)):
            up = w[i] > w[i - 1]
            if up != (i % 2 == 1) or w[i] == w[i - 1]:
                raise ValidationError(f"critical word is not alternating at {i}: {w}")
        if self.terminal < w[-1]:
            raise ValidationError("terminal level below the last minimum")

    @property
    def minimum(self) -> int:
        return min(self.critical[::2])

    @property
    def maximum(self) -> int:
        return max(max(self.critical), self.terminal)

    def is_palindromic(self) -> bool:
        return self.critical == self.critical[::-1]

    def shifted(self, offset: int) -> "TauProfile":
        return TauProfile(tuple(v + offset for v in self.critical),
                          self.terminal + offset, self.anchor, self.positions)

    def to_dict(self) -> dict:
        out = {"critical": list(self.critical), "terminal": self.terminal,
               "anchor": self.anchor}
        if self.positions is not None:
            out["positions"] = list(self.positions)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TauProfile":
        pos = data.get("positions")
        return cls(tuple(data["critical"]), int(data["terminal"]),
                   int(data.get("anchor", 0)),
                   None if pos is None else tuple(pos))


def tau_from_delta(ds: DeltaSequence, start: int = 0) -> TauProfile:
    """Critical word of the tau function with ``tau(first position) = start``."""
    if not ds.entries:
        return TauProfile((start,), start, 0, (0,))
    if ds.entries[0][1] < 0:
        raise ValidationError("delta sequence starts with a negative run")
    values = [start]
    positions = [ds.entries[0][0]]
    level = start
    for i, (pos, sign) in enumerate(ds.entries):
        level += sign
        nxt = ds.entries[i + 1] if i + 1 < len(ds.entries) else None
        if nxt is None or nxt[1] != sign:
            values.append(level)
            positions.append(pos + 1)
    terminal = values[-1]
    if ds.entries[-1][1] > 0:
        values.pop()
        positions.pop()
    return TauProfile(tuple(values), terminal, positions[0], tuple(positions))


@dataclass(frozen=True)
class GradedRoot:
    """A graded root in canonical form.

    ``calibrated`` records whether the levels already include the grading
    shift of the plumbing (see :class:`GradingCalibration`).
    """

    profile: TauProfile
    calibrated: bool = False

    @property
    def word(self) -> tuple[int, ...]:
        return self.profile.critical

    @property
    def leaves(self) -> list[tuple[int, int]]:
        """``(level, mirror index)`` per leaf; the mirror index is ``-1``
        when the root is not palindromic."""
        w = self.word
        sym = self.profile.is_palindromic()
        return [(w[i], (len(w) - 1 - i) if sym else -1) for i in range(0, len(w), 2)]

    @property
    def joins(self) -> list[int]:
        return list(self.word[1::2])

    def shifted(self, offset: int, calibrated: bool | None = None) -> "GradedRoot":
        return GradedRoot(self.profile.shifted(offset),
                          self.calibrated if calibrated is None else calibrated)

    # -- explicit tree ---------------------------------------------------

    def components(self, level: int) -> list[tuple[int, int]]:
        """Components of the sublevel set at ``level`` as index ranges of
        the critical word (inclusive)."""
        w = self.word
        out = []
        i = 0
        while i < len(w):
            if w[i] <= level:
                j = i
                while j + 1 < len(w) and w[j + 1] <= level:
                    j += 1
                out.append((i, j))
                i = j + 1
            else:
                i += 1
        return out

    def tree(self, top: int | None = None):
        """Vertices ``(level, k)`` and upward edges up to level ``top``.

        Level ``top`` (default one above the highest critical point) holds
        the single trunk vertex.
        """
        if top is None:
            top = max(self.word) + 1
        levels = {}
        edges = []
        for h in range(self.profile.minimum, top + 1):
            levels[h] = self.components(h)
        for h in range(self.profile.minimum, top):
            upper = levels[h + 1]
            for k, (lo, _hi) in enumerate(levels[h]):
                up = next(m for m, (a, b) in enumerate(upper) if a <= lo <= b)
                edges.append(((h, k), (h + 1, up)))
        return levels, edges

    def to_dot(self, name: str = "root", grading=None, marked: set | None = None) -> str:
        """DOT text; ``grading`` maps a level to its printed label and
        ``marked`` holds critical indices whose branches are drawn bold."""
        grading = grading or (lambda h: h)
        levels, edges = self.tree()
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=point];"]
        for h, comps in levels.items():
            for k, (lo, hi) in enumerate(comps):
                attrs = [f'label="{grading(h)}"', 'xlabel="%s"' % grading(h)]
                if marked is not None:
                    dark = any(lo <= i <= hi for i in marked)
                    attrs.append(f'subroot="{"dark" if dark else "light"}"')
                    if dark:
                        attrs.append("style=filled")
                lines.append(f'  "{h}_{k}" [{", ".join(attrs)}];')
        for (h, k), (h2, k2) in edges:
            lines.append(f'  "{h}_{k}" -> "{h2}_{k2}" [arrowhead=none];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"profile": self.profile.to_dict(), "calibrated": self.calibrated}

    @classmethod
    def from_dict(cls, data: dict) -> "GradedRoot":
        return cls(TauProfile.from_dict(data["profile"]), bool(data.get("calibrated", False)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GradedRoot":
        return cls.from_dict(json.loads(text))


def root_from_tau(tp: TauProfile) -> GradedRoot:
    return GradedRoot(tp)


def root_from_word(word: Sequence[int], terminal: int | None = None) -> GradedRoot:
    word = tuple(word)
    return GradedRoot(TauProfile(word, word[-1] if terminal is None else terminal))


# -- persistence -------------------------------------------------------------

@dataclass(frozen=True)
class Bars:
    survivor: int
    bars: tuple[tuple[int, int], ...]

    def lengths(self) -> list[int]:
        return [j - m for m, j in self.bars]


def persistence_bars(root: GradedRoot) -> Bars:
    """Elder-rule pairing of the maxima with the minima they kill.

    Sweeping upwards, each maximum merges the two components on either
    side; the one with the higher minimum dies.  Equal minima: the one
    farther from the surviving global minimum (the leftmost lowest leaf)
    dies.
    """
    w = root.word
    minima = list(range(0, len(w), 2))
    survivor = min(minima, key=lambda i: (w[i], i))
    parent = {i: i for i in minima}
    rep = {i: i for i in minima}  # component root -> its oldest minimum

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def age(i):
        return (w[i], abs(i - survivor))

    bars = []
    for j in sorted(range(1, len(w), 2), key=lambda j: (w[j], j)):
        a, b = find(j - 1), find(j + 1)
        ra, rb = rep[a], rep[b]
        elder, younger = (ra, rb) if age(ra) <= age(rb) else (rb, ra)
        bars.append((w[younger], w[j]))
        parent[b] = a
        rep[a] = elder
    bars.sort()
    return Bars(w[survivor], tuple(bars))


@dataclass(frozen=True)
class FUModule:
    """A tower plus a multiset of torsion towers.

    ``torsion`` entries are ``(grading, length, multiplicity)``; the grading
    is that of the element coming from the leaf.
    """

    tower_bottom: int | None
    torsion: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(sorted(
            (int(g), int(n), int(m)) for g, n, m in self.torsion)))
        if any(n < 1 or m < 1 for _, n, m in self.torsion):
            raise ValidationError("torsion lengths and multiplicities must be >= 1")

    def lengths(self) -> list[int]:
        """Torsion lengths with multiplicity, descending."""
        return sorted((n for _, n, m in self.torsion for _ in range(m)), reverse=True)

    def to_list(self) -> list[dict]:
        return [{"grading": g, "length": n, "mult": m} for g, n, m in self.torsion]

    @classmethod
    def from_list(cls, items: Iterable[dict], tower_bottom=None) -> "FUModule":
        return cls(tower_bottom, tuple((d["grading"], d["length"], d["mult"]) for d in items))


def _collect(items: Iterable[tuple[int, int]]) -> tuple[tuple[int, int, int], ...]:
    counts: dict[tuple[int, int], int] = {}
    for key in items:
        counts[key] = counts.get(key, 0) + 1
    return tuple((g, n, m) for (g, n), m in sorted(counts.items()))


@dataclass(frozen=True)
class GradingCalibration:
    """Affine maps from tau levels to absolute gradings.

    ``shift`` is ``(k_can^2 + |G|)/4`` for the plumbing the root came from.
    Normalised levels are ``tau - shift/2``; in them the tower bottom sits
    at ``d/2`` and the printed maps carry no constants other than the fixed
    ones below.
    """

    shift: int = 0

    def __post_init__(self):
        if isinstance(self.shift, Fraction):
            if self.shift.denominator != 1:
                raise ValidationError(f"grading shift {self.shift} is not integral")
            object.__setattr__(self, "shift", int(self.shift))
        if self.shift % 2:
            raise ValidationError(f"grading shift {self.shift} is odd")

    @property
    def level_offset(self) -> int:
        return -self.shift // 2

    def normalise(self, root: GradedRoot) -> GradedRoot:
        if root.calibrated:
            return root
        return root.shifted(self.level_offset, calibrated=True)

    @staticmethod
    def grading(level: int, flavor: str) -> int:
        if flavor == "plus":
            return 2 * level
        if flavor == "minus":
            return -2 * level - 2
        raise InputError(f"unknown flavor {flavor!r}")


def fu_module(root: GradedRoot, flavor: str = "minus",
              calib: GradingCalibration | None = None) -> FUModule:
    """Lattice homology of the root as an F_2[U]-module."""
    calib = calib or GradingCalibration()
    root = calib.normalise(root)
    pb = persistence_bars(root)
    g = lambda t: GradingCalibration.grading(t, flavor)
    return FUModule(g(pb.survivor), _collect((g(m), j - m) for m, j in pb.bars))


def brute_module_oracle(root: GradedRoot, depth: int = 1) -> Bars:
    """Decompose the vertex span of the truncated root by linear algebra.

    Works with the explicit tree on levels ``[min, max + depth]``: the
    space at level ``h`` is F_2 on the vertices there, and the structure
    maps send a vertex to its parent.  Interval multiplicities come from
    ranks of composite maps by inclusion-exclusion; the unique interval
    reaching the top is the tower.
    """
    if depth < 1:
        raise ValidationError("truncation must reach above the highest join")
    lo = root.profile.minimum
    hi = max(root.word) + depth
    comps = {h: root.components(h) for h in range(lo, hi + 1)}

    def step(h):
        upper = comps[h + 1]
        out = []
        for a, _b in comps[h]:
            k = next(m for m, (x, y) in enumerate(upper) if x <= a <= y)
            out.append(1 << k)
        return out

    steps = {h: step(h) for h in range(lo, hi)}

    # rank[(i, j)] for i <= j: rank of the composite from level i to j
    rank: dict[tuple[int, int], int] = {}
    for i in range(lo, hi + 1):
        rows = [1 << k for k in range(len(comps[i]))]
        rank[(i, i)] = _linalg.gf2_rank(rows)
        for j in range(i, hi):
            nxt = steps[j]
            rows = [_compose(r, nxt) for r in rows]
            rank[(i, j + 1)] = _linalg.gf2_rank(rows)

    def r(i, j):
        if i < lo or j > hi or i > j:
            return 0
        return rank[(i, j)]

    bars = []
    free = []
    for b in range(lo, hi + 1):
        for e in range(b, hi + 1):
            mult = r(b, e) - r(b - 1, e) - r(b, e + 1) + r(b - 1, e + 1)
            if mult < 0:
                raise ValidationError("negative interval multiplicity")
            if e == hi:
                free += [b] * mult
            else:
                bars += [(b, e + 1)] * mult
    if len(free) != 1:
        raise ValidationError(f"free part has rank {len(free)}; truncation too shallow")
    return Bars(free[0], tuple(sorted(bars)))


def _compose(row: int, images: list[int]) -> int:
    """Image of a bitmask vector under a map given by column images."""
    out = 0
    k = 0
    while row:
        if row & 1:
            out ^= images[k]
        row >>= 1
        k += 1
    return out


def with_calibration(root: GradedRoot, shift: int | Fraction) -> GradedRoot:
    return GradingCalibration(shift).normalise(root)


__all__ = [
    "TauProfile", "GradedRoot", "Bars", "FUModule", "GradingCalibration",
    "tau_from_delta", "root_from_tau", "root_from_word", "persistence_bars",
    "fu_module", "brute_module_oracle", "with_calibration",
]

