"""Monotone subroots and the invariants read off them.

Everything here works with tau levels.  Three presentation maps are applied
at the edges, always to calibrated levels:

* printed parameters ``(h, r) = (-2t, -2s)``;
* module gradings ``g = -2t - 2``;
* ``d = 2 min(tau)`` and ``mu_bar = s_n``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exceptions import ValidationError
from .graded_root import (Bars, FUModule, GradedRoot, GradingCalibration, TauProfile,
                          fu_module, persistence_bars)
from .plumbing import PlumbingGraph, shift_constant


def leaf_pairs(root: GradedRoot) -> list[tuple[int, int]]:
    """One ``(t, s)`` per mirror orbit of leaves, outermost orbit first.

    ``t`` is the leaf level and ``s`` the level where the leaf meets its
    mirror image; a leaf on the axis gives ``(t, t)``.
    """
    w = root.word
    if not root.profile.is_palindromic():
        raise ValidationError("leaf pairs need a symmetric root")
    L = len(w)
    if L == 1:
        return []  # a bare tower has no leaves off the trunk
    mid = (L - 1) // 2
    joins = {}
    top = w[mid]
    # walk outwards from the axis, keeping the running maximum
    for i in range(mid, -1, -1):
        top = max(top, w[i])
        if i % 2 == 0:
            joins[i] = w[i] if i == mid else top
    return [(w[i], joins[i]) for i in sorted(joins)]


@dataclass(frozen=True)
class MonotoneRoot:
    """Pairs ``(t_i, s_i)`` with ``s`` strictly decreasing and ``t``
    non-decreasing; ``bottom`` is the tower level when there are no pairs."""

    pairs: tuple[tuple[int, int], ...]
    bottom: int = 0
    calibrated: bool = False

    def __post_init__(self):
        pairs = tuple((int(t), int(s)) for t, s in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for i, (t, s) in enumerate(pairs):
            if t > s:
                raise ValidationError(f"pair {i} has t > s")
            if t == s and i != len(pairs) - 1:
                raise ValidationError("only the last pair may sit on the axis")
        for (t1, s1), (t2, s2) in zip(pairs, pairs[1:]):
            if not (s2 < s1 and t1 <= t2):
                raise ValidationError(f"pairs are not monotone: {pairs}")
        if len(pairs) == 1 and pairs[0][0] == pairs[0][1]:
            # a lone axis leaf is a bare tower
            object.__setattr__(self, "pairs", ())
        if pairs:
            object.__setattr__(self, "bottom", pairs[0][0])

    @property
    def printed(self) -> list[tuple[int, int]]:
        return [(-2 * t, -2 * s) for t, s in self.pairs]

    def word(self) -> tuple[int, ...]:
        """Critical word of the monotone root's own tree."""
        if not self.pairs:
            return (self.bottom,)
        left: list[int] = []
        for t, s in self.pairs[:-1]:
            left += [t, s]
        t, s = self.pairs[-1]
        centre = [t] if t == s else [t, s, t]
        return tuple(left + centre + left[::-1])

    def root(self) -> GradedRoot:
        w = self.word()
        return GradedRoot(TauProfile(w, w[-1]), self.calibrated)

    def label(self) -> str:
        return "M(" + "; ".join(f"{h},{r}" for h, r in self.printed) + ")"

    @classmethod
    def from_printed(cls, printed, calibrated: bool = True) -> "MonotoneRoot":
        pairs = []
        for h, r in printed:
            if h % 2 or r % 2:
                raise ValidationError("printed parameters must be even")
            pairs.append((-h // 2, -r // 2))
        return cls(tuple(pairs), calibrated=calibrated)


def monotone_subroot(root: GradedRoot) -> MonotoneRoot:
    """Drop every orbit beaten by one that is strictly deeper and joins no
    higher; what is left, ordered by join level, is the monotone root."""
    pairs = sorted(set(leaf_pairs(root)))
    kept = []
    for t, s in pairs:
        if any(t2 < t and s2 <= s for t2, s2 in pairs):
            continue
        kept.append((t, s))
    kept.sort(key=lambda p: -p[1])
    return MonotoneRoot(tuple(kept), root.profile.minimum, root.calibrated)


def d_invariant(root: GradedRoot, graph: PlumbingGraph | None = None) -> int:
    """``2 min(tau)`` on calibrated levels.

    An uncalibrated root needs its graph; the shift ``(k_can^2+|G|)/4``
    enters as ``d = 2 min(tau) - shift``.
    """
    if root.calibrated:
        return 2 * root.profile.minimum
    if graph is None:
        raise ValidationError("uncalibrated root: the plumbing graph is required")
    return d_invariant(GradingCalibration(shift_constant(graph)).normalise(root))


def mu_bar(mono: MonotoneRoot) -> int:
    if not mono.calibrated:
        raise ValidationError("mu_bar needs calibrated levels")
    if not mono.pairs:
        return mono.bottom
    return mono.pairs[-1][1]


def hf_conn(mono: MonotoneRoot) -> FUModule:
    """Torsion of the minus-flavour lattice homology of the monotone root."""
    if not mono.calibrated:
        raise ValidationError("hf_conn needs calibrated levels")
    m = fu_module(mono.root(), "minus")
    return FUModule(None, m.torsion)


def monotone_bars(mono: MonotoneRoot) -> Bars:
    return persistence_bars(mono.root())


def parity_reduction(module: FUModule) -> FUModule:
    """Keep one copy of each summand whose multiplicity is odd."""
    return FUModule(module.tower_bottom,
                    tuple((g, n, 1) for g, n, m in module.torsion if m % 2))


@dataclass(frozen=True)
class InvariantReport:
    p: int
    q: int
    r: int
    N0: int
    d: int
    mu_bar: int
    monotone: tuple[tuple[int, int], ...]
    hf_conn: FUModule
    phi: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "r": self.r, "N0": self.N0,
            "d": self.d, "mu_bar": self.mu_bar,
            "monotone": [list(x) for x in self.monotone],
            "hf_conn": self.hf_conn.to_list(),
            "phi": {str(k): v for k, v in sorted(self.phi.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        return cls(int(data["p"]), int(data["q"]), int(data["r"]), int(data["N0"]),
                   int(data["d"]), int(data["mu_bar"]),
                   tuple(tuple(x) for x in data["monotone"]),
                   FUModule.from_list(data["hf_conn"]),
                   {int(k): int(v) for k, v in data["phi"].items()})

    @classmethod
    def from_json(cls, text: str) -> "InvariantReport":
        return cls.from_dict(json.loads(text))
