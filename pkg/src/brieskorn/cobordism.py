"""Standard complexes and the homomorphisms ``phi_k``.

Only the part of a standard complex that ``phi_k`` can see is kept: a
signed multiset of the height parameters.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from . import _linalg
from .exceptions import InputError
from .monotone import MonotoneRoot


@dataclass(frozen=True)
class StandardComplexSum:
    """Formal sum of ``+-C(-, m)``, stored as ``{m: signed count}``."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_terms(cls, items) -> "StandardComplexSum":
        c: Counter = Counter()
        for sign, m in items:
            if m < 0:
                raise InputError("standard complex parameters are non-negative")
            if m:
                c[m] += sign
        return cls(tuple(sorted((m, v) for m, v in c.items() if v)))

    def __add__(self, other: "StandardComplexSum") -> "StandardComplexSum":
        return StandardComplexSum.from_terms(_expand(self) + _expand(other))

    def __neg__(self) -> "StandardComplexSum":
        return StandardComplexSum(tuple((m, -v) for m, v in self.terms))

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)


def _expand(c: StandardComplexSum) -> list[tuple[int, int]]:
    out = []
    for m, v in c.terms:
        out += [(1 if v > 0 else -1, m)] * abs(v)
    return out


def to_standard_complex(mono: MonotoneRoot) -> StandardComplexSum:
    """``+C(-, s_i - t_i)`` for each pair and ``-C(-, s_i - t_{i+1})``
    between neighbours."""
    p = mono.pairs
    items = [(1, s - t) for t, s in p]
    items += [(-1, p[i][1] - p[i + 1][0]) for i in range(len(p) - 1)]
    return StandardComplexSum.from_terms(items)


def phi(k: int, c: StandardComplexSum) -> int:
    if k < 1:
        raise InputError("phi_k needs k >= 1")
    return c.as_dict().get(k, 0)


def phi_vector(c: StandardComplexSum) -> dict[int, int]:
    return c.as_dict()


def independence_matrix(family: str, N: int, complexes=None):
    """``(matrix, rank)`` with entry ``(k, n) = phi_k`` of member ``n``.

    ``complexes`` maps ``n`` to a standard complex sum; by default they are
    computed from the closed-form windows.
    """
    if N < 1:
        raise InputError("N must be >= 1")
    if complexes is None:
        from .pipeline import family_invariants
        complexes = {n: family_invariants(family, n).complex for n in range(1, N + 1)}
    mat = [[phi(k, complexes[n]) for n in range(1, N + 1)] for k in range(1, N + 1)]
    return mat, _linalg.rank(mat)


def matrix_to_json(family: str, N: int, mat, rank: int) -> str:
    return json.dumps({"family": family, "N": N, "rank": rank, "matrix": mat}, sort_keys=True)


def matrix_to_csv(mat) -> str:
    return "\n".join(",".join(str(v) for v in row) for row in mat) + "\n"
