"""Semigroups, delta sequences and packed sequences of Brieskorn spheres.

For ``Sigma(p, q, r)`` put ``x = pq``, ``y = pr``, ``z = qr`` and
``N0 = pqr - x - y - z``.  ``S`` is the part of the semigroup
``<x, y, z>`` lying in ``[0, N0]`` and ``Q = {N0 - s : s in S}``.  The delta
sequence is ``S`` and ``Q`` merged in increasing order, with sign ``+1`` on
``S`` and ``-1`` on ``Q``.

The second half of the module gives closed forms for the windows
``[a, b]`` of the three ASL families, built from packed sequences rather
than from a sieve.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exceptions import InputError, ValidationError
from .plumbing import check_triple, is_asl

FAMILIES = ("X", "Y", "Z")


def family_triple(family: str, n: int) -> tuple[int, int, int]:
    """``X_n = Sigma(2n+1, 4n+1, 4n+3)``, ``Y_n = Sigma(2n+1, 3n+2, 6n+1)``,
    ``Z_n = Sigma(2n+1, 3n+1, 6n+5)``."""
    n = int(n)
    if n < 1:
        raise InputError(f"family index must be >= 1, got {n}")
    if family == "X":
        return 2 * n + 1, 4 * n + 1, 4 * n + 3
    if family == "Y":
        return 2 * n + 1, 3 * n + 2, 6 * n + 1
    if family == "Z":
        return 2 * n + 1, 3 * n + 1, 6 * n + 5
    raise InputError(f"unknown family {family!r}; expected one of X, Y, Z")


def family_of(p: int, q: int, r: int) -> tuple[str, int] | None:
    """Inverse of :func:`family_triple`; ``None`` for non-members.

    ``X_1 = Y_1``; the Y label is returned for it.
    """
    if p % 2 == 0 or p < 3:
        return None
    n = (p - 1) // 2
    for fam in ("Y", "Z", "X"):
        if family_triple(fam, n) == (p, q, r):
            return fam, n
    return None


def sieve(generators: Sequence[int], limit: int) -> np.ndarray:
    """Boolean membership table of the semigroup on ``[0, limit]``."""
    if limit < 0:
        return np.zeros(0, dtype=bool)
    table = np.zeros(limit + 1, dtype=bool)
    table[0] = True
    for g in generators:
        # Block-wise unbounded knapsack: block k only reads block k-1.
        for start in range(g, limit + 1, g):
            stop = min(start + g, limit + 1)
            table[start:stop] |= table[start - g:stop - g]
    return table


@dataclass(frozen=True)
class SemigroupData:
    p: int
    q: int
    r: int
    S: tuple[int, ...] = field(repr=False)
    Q: tuple[int, ...] = field(repr=False)

    @property
    def x(self) -> int:
        return self.p * self.q

    @property
    def y(self) -> int:
        return self.p * self.r

    @property
    def z(self) -> int:
        return self.q * self.r

    @property
    def N0(self) -> int:
        return self.p * self.q * self.r - self.x - self.y - self.z

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.S)

    def __contains__(self, s: int) -> bool:
        return s in self.members


def semigroup_data(p: int, q: int, r: int) -> SemigroupData:
    p, q, r = check_triple(p, q, r)
    x, y, z = p * q, p * r, q * r
    n0 = p * q * r - x - y - z
    table = sieve((x, y, z), n0)
    s = tuple(int(v) for v in np.flatnonzero(table))
    q_set = tuple(n0 - v for v in reversed(s))
    return SemigroupData(p, q, r, s, q_set)


def run_lengths(signs: Iterable[int]) -> tuple[int, ...]:
    """Merge consecutive equal signs into signed run lengths."""
    out: list[int] = []
    for s in signs:
        if out and (out[-1] > 0) == (s > 0):
            out[-1] += s
        else:
            out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class DeltaSequence:
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pos = [p for p, _ in self.entries]
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValidationError("delta positions must be strictly increasing")
        if any(s not in (1, -1) for _, s in self.entries):
            raise ValidationError("delta signs must be +1 or -1")

    @cached_property
    def reduced(self) -> tuple[int, ...]:
        return run_lengths(s for _, s in self.entries)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    def __len__(self):
        return len(self.entries)

    def restrict(self, lo: int, hi: int) -> "DeltaSequence":
        return DeltaSequence(tuple(e for e in self.entries if lo <= e[0] <= hi))

    def total(self) -> int:
        return sum(s for _, s in self.entries)


def delta_sequence(sd: SemigroupData) -> DeltaSequence:
    common = sd.members.intersection(sd.Q)
    if common:
        raise ValidationError(
            f"S and Q intersect at {sorted(common)[:5]}; the delta sequence "
            "is undefined")
    merged = [(s, 1) for s in sd.S] + [(s, -1) for s in sd.Q]
    merged.sort()
    return DeltaSequence(tuple(merged))


# -- packed sequences ---------------------------------------------------------

@dataclass(frozen=True)
class PackedSequence:
    """``[fx + gy + hz]``, or its complement ``N0 - [fx + gy + hz]``."""

    f: int
    g: int
    h: int
    complemented: bool = False

    def __post_init__(self):
        if min(self.f, self.g) != 0 or min(self.f, self.g, self.h) < 0:
            raise ValidationError(f"invalid packed sequence {self}")

    def __len__(self):
        return self.h + 1

    def complement(self) -> "PackedSequence":
        return PackedSequence(self.f, self.g, self.h, not self.complemented)


def packed_expand(ps: PackedSequence, sd: SemigroupData) -> list[int]:
    """Elements of a (complementary) packed sequence in increasing order."""
    step = sd.x + sd.y - sd.z
    if step != 1:
        raise ValidationError("packed sequences need x + y = z + 1")
    first = ps.f * sd.x + ps.g * sd.y + ps.h * sd.z
    block = range(first, first + ps.h + 1)
    if ps.complemented:
        return [sd.N0 - v for v in reversed(block)]
    return list(block)


def window_positions(family: str, n: int, sd: SemigroupData | None = None) -> tuple[int, int]:
    """``a = x + (n-1) z`` and ``b = y + (n-1) z``, checked to lie in ``S``."""
    p, q, r = family_triple(family, n)
    x, y, z = p * q, p * r, q * r
    a, b = x + (n - 1) * z, y + (n - 1) * z
    if sd is not None and (a not in sd or b not in sd):
        raise ValidationError(f"window ends {a}, {b} not in the semigroup")
    return a, b


def _theta(n, k):
    return PackedSequence(1 + 3 * k, 0, n - 1 - k)


def _omega(n, ell):
    return PackedSequence(0, 1 + 3 * ell, n - 1 - 2 * ell)


def _eta(n, k):
    return PackedSequence(2 + 3 * k, 0, n - 1 - k)


def _xi(n, ell):
    return PackedSequence(0, -1 + 3 * ell, n - 2 * ell)


def family_blocks(family: str, n: int) -> list[PackedSequence]:
    """Ordered blocks tiling the window on ``[a, b)``.

    The right end ``b`` is a lone semigroup element and is not included.
    """
    th = lambda k: _theta(n, k)
    if family == "X":
        return [th(0), th(0).complement()]
    blocks: list[PackedSequence] = []
    if family == "Y":
        om = lambda ell: _omega(n, ell)
        if n % 2:
            half = range(0, (n - 1) // 2)
            middle = [th((n - 1) // 2), th((n - 1) // 2).complement()]
        else:
            half = range(0, (n - 2) // 2)
            middle = [th((n - 2) // 2), th(n // 2).complement(),
                      th(n // 2), th((n - 2) // 2).complement()]
        for j in half:
            blocks += [th(j), th(n - 1 - j).complement(), om(j + 1).complement()]
        blocks += middle
        for j in reversed(half):
            blocks += [om(j + 1), th(n - 1 - j), th(j).complement()]
        return blocks
    if family == "Z":
        et = lambda k: _eta(n, k)
        xi = lambda ell: _xi(n, ell)
        blocks.append(th(0))
        if n % 2:
            half = range(0, (n - 1) // 2)
            middle = [et((n - 1) // 2).complement(), et((n - 1) // 2)]
        else:
            half = range(0, n // 2)
            middle = []
        for j in half:
            blocks += [et(j).complement(), xi(j + 1), et(n - 1 - j)]
        blocks += middle
        for j in reversed(half):
            blocks += [et(n - 1 - j).complement(), xi(j + 1).complement(), et(j)]
        blocks.append(th(0).complement())
        return blocks
    raise InputError(f"unknown family {family!r}")


def family_window(family: str, n: int) -> DeltaSequence:
    """The delta sequence on ``[a, b]`` assembled from packed sequences."""
    p, q, r = family_triple(family, n)
    # Only the scalar fields are needed; skip the sieve.
    sd = SemigroupData(p, q, r, (), ())
    entries = []
    for blk in family_blocks(family, n):
        sign = -1 if blk.complemented else 1
        entries += [(v, sign) for v in packed_expand(blk, sd)]
    entries.append((sd.y + (n - 1) * sd.z, 1))
    return DeltaSequence(tuple(entries))


def window_reduced_delta(family: str, n: int) -> tuple[int, ...]:
    """Closed-form reduced delta sequence of the family window."""
    if n < 1:
        raise InputError("n must be >= 1")
    if family == "X":
        return (n, -n, 1)
    out = [n]
    if family == "Y":
        if n % 2:
            down = range(n - 1, (n + 1) // 2 - 1, -1)
            centre: list[int] = []
        else:
            down = range(n - 1, (n + 2) // 2 - 1, -1)
            centre = [-(n // 2), n // 2]
    elif family == "Z":
        if n % 2:
            down = range(n, (n + 3) // 2 - 1, -1)
            centre = [-((n + 1) // 2), (n + 1) // 2]
        else:
            down = range(n, (n + 2) // 2 - 1, -1)
            centre = []
    else:
        raise InputError(f"unknown family {family!r}")
    if family == "Y" and n % 2:
        # the two innermost pairs meet at (n+1)/2 with no separate centre
        for m in down:
            out += [-m, m]
        for m in reversed(down):
            out += [-m, m]
    else:
        for m in down:
            out += [-m, m]
        out += centre
        for m in reversed(down):
            out += [-m, m]
    out += [-n, 1]
    return tuple(out)


def is_asl_family_member(p: int, q: int, r: int) -> bool:
    return is_asl(p, q, r) and family_of(p, q, r) is not None
