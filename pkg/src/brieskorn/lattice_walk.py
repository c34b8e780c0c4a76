"""Walks through characteristic classes of a plumbing.

Two walks live here.  The full-path walk pushes a class down by
``k -> k + 2 PD(v)`` wherever ``<k, v> = -e_v``; its terminal class decides
whether the starting class supports a good path and, through the maximum
of ``(k^2 + |G|)/4``, gives the correction term.  The Laufer sequence walks
from the canonical class, firing the central vertex once per step and
cleaning up the legs after it; the central Euler characteristics it meets
add up to the tau function.
"""
from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .exceptions import CapExceeded, InputError, ValidationError
from .plumbing import (CharClass, PlumbingGraph, bad_vertices, canonical_class, square,
                       tree_solve)

log = logging.getLogger(__name__)

EXHAUSTIVE_CAP = 26


@dataclass(frozen=True)
class FullPath:
    steps: tuple[CharClass, ...]
    fired: tuple[int, ...]
    good: bool

    @property
    def terminal(self) -> CharClass:
        return self.steps[-1]


def in_initial_box(graph: PlumbingGraph, k: CharClass) -> bool:
    return all(e + 2 <= a <= -e for a, e in zip(k.pairings, graph.weights))


def is_good_terminal(graph: PlumbingGraph, k: CharClass) -> bool:
    """No further push is possible and nothing overshot: ``e <= <k,v> <= -e-2``."""
    return all(e <= a <= -e - 2 for a, e in zip(k.pairings, graph.weights))


def _push(graph: PlumbingGraph, k: list[int], v: int, sign: int = 1) -> None:
    k[v] += 2 * sign * graph.weights[v]
    for u in graph.neighbors[v]:
        k[u] += 2 * sign


def follow_path(graph: PlumbingGraph, k: CharClass, order: str = "ascending",
                cap: int | None = None) -> FullPath:
    """Run the full path from ``k``.

    ``order`` picks the vertex to push when several qualify.  Whether the
    path is good, and its terminal class when it is, do not depend on it.
    The walk stops early, as a bad path, as soon as some pairing exceeds
    ``-e``; where it stops then does depend on the order.
    """
    if not k.is_characteristic(graph):
        raise InputError("initial class is not characteristic")
    if not in_initial_box(graph, k):
        raise InputError("initial class is outside e+2 <= <k,v> <= -e")
    if order not in ("ascending", "descending"):
        raise InputError(f"unknown vertex order {order!r}")
    cap = cap if cap is not None else 4 * len(graph) ** 3 + 64
    w = graph.weights
    cur = list(k.pairings)
    steps = [k]
    fired = []
    verts = range(len(graph)) if order == "ascending" else range(len(graph) - 1, -1, -1)
    while True:
        if any(a > -e for a, e in zip(cur, w)):
            return FullPath(tuple(steps), tuple(fired), False)
        v = next((j for j in verts if cur[j] == -w[j]), None)
        if v is None:
            break
        if len(fired) >= cap:
            raise CapExceeded(f"full path exceeded {cap} steps")
        _push(graph, cur, v)
        fired.append(v)
        steps.append(CharClass(tuple(cur)))
    return FullPath(tuple(steps), tuple(fired), is_good_terminal(graph, steps[-1]))


def initial_classes(graph: PlumbingGraph) -> Iterator[CharClass]:
    ranges = [range(e + 2, -e + 1, 2) for e in graph.weights]
    for combo in itertools.product(*ranges):
        yield CharClass(combo)


def good_initial_classes(graph: PlumbingGraph, cap: int = EXHAUSTIVE_CAP):
    """All ``(initial, terminal)`` pairs whose full path is good."""
    if len(graph) > cap:
        raise CapExceeded(f"exhaustive scan limited to {cap} vertices, graph has {len(graph)}")
    out = []
    for k in initial_classes(graph):
        path = follow_path(graph, k)
        if path.good:
            out.append((k, path.terminal))
    return out


def correction_term(graph: PlumbingGraph, k: CharClass) -> Fraction:
    """``(k^2 + |G|)/4``."""
    return (square(graph, k) + len(graph)) / 4


# -- maximising k^2 ------------------------------------------------------------

def _max_square_class(graph: PlumbingGraph) -> CharClass:
    """A characteristic class of maximal square.

    Writing ``k = k_can + 2 I x`` turns the problem into maximising
    ``F(x) = k_can.x + x^T I x`` over integer ``x``.  ``F`` is a negative
    definite quadratic on a tree, so a max-plus dynamic program over the
    tree is exact once each coordinate is confined to a box that provably
    contains the integer optimum.
    """
    n = len(graph)
    c = canonical_class(graph).pairings
    inv = graph.inverse
    # real optimum x* = -I^{-1} c / 2
    xs = [-sum((inv[i][j] * c[j] for j in range(n) if c[j]), Fraction(0)) / 2 for i in range(n)]
    x0 = [round(v) for v in xs]
    d = [a - b for a, b in zip(x0, xs)]
    # R^2 = -(x0-x*)^T I (x0-x*) bounds -(x-x*)^T I (x-x*) at the optimum
    r2 = -sum(graph.matrix[i][j] * d[i] * d[j] for i in range(n) for j in range(n)
              if d[i] and d[j] and graph.matrix[i][j])
    boxes = []
    for v in range(n):
        bound = r2 * (-inv[v][v])
        rad = isqrt(int(bound) + 1) + 1
        boxes.append(range(int(xs[v]) - rad - 1, int(xs[v]) + rad + 2))

    # root the tree at 0 and run the DP leaves-first
    order, parent = [0], {0: None}
    for u in order:
        for v in graph.neighbors[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
    best: dict[int, list[int]] = {}
    choice: dict[int, list[list[int]]] = {}
    for v in reversed(order):
        vals = []
        picks = []
        e = graph.weights[v]
        kids = [u for u in graph.neighbors[v] if parent.get(u) == v]
        for a in boxes[v]:
            total = c[v] * a + e * a * a
            pick = []
            for u in kids:
                cand = [2 * a * b + best[u][ib] for ib, b in enumerate(boxes[u])]
                ib = max(range(len(cand)), key=cand.__getitem__)
                total += cand[ib]
                pick.append(ib)
            vals.append(total)
            picks.append(pick)
        best[v] = vals
        choice[v] = picks
    x = [0] * n
    idx = {0: max(range(len(best[0])), key=best[0].__getitem__)}
    for v in order:
        i = idx[v]
        x[v] = boxes[v][i]
        kids = [u for u in graph.neighbors[v] if parent.get(u) == v]
        for u, ib in zip(kids, choice[v][i]):
            idx[u] = ib
    for v in range(n):
        if x[v] in (boxes[v][0], boxes[v][-1]):
            raise ValidationError("optimiser hit the edge of its search box")
    k = [ci + 2 * sum(graph.matrix[i][j] * x[j] for j in graph.neighbors[i] + (i,))
         for i, ci in enumerate(c)]
    return CharClass(tuple(k))


def _lift_into_box(graph: PlumbingGraph, k: CharClass, cap: int = 100000) -> CharClass:
    """Undo pushes until ``e+2 <= <k,v>``; the square is unchanged."""
    cur = list(k.pairings)
    w = graph.weights
    for _ in range(cap):
        v = next((j for j in range(len(cur)) if cur[j] == w[j]), None)
        if v is None:
            return CharClass(tuple(cur))
        _push(graph, cur, v, -1)
    raise CapExceeded("could not lift class into the initial box")


def d_via_os(graph: PlumbingGraph, method: str = "optimise",
             cap: int = EXHAUSTIVE_CAP) -> int:
    """Correction term ``d`` in the orientation where ``d(Sigma(2,3,5)) = -2``.

    ``method="optimise"`` maximises ``k^2`` over all characteristic classes
    and certifies the maximiser with a good full path.
    ``method="exhaustive"`` scans every initial class (small graphs only).
    """
    if len(bad_vertices(graph)) > 1:
        raise InputError("more than one bad vertex")
    if method == "exhaustive":
        best = max(correction_term(graph, t) for _, t in good_initial_classes(graph, cap))
    elif method == "optimise":
        k = _lift_into_box(graph, _max_square_class(graph))
        path = follow_path(graph, k)
        if not path.good:
            raise ValidationError("maximal class does not support a good path")
        best = correction_term(graph, path.terminal)
    else:
        raise InputError(f"unknown method {method!r}")
    if best.denominator != 1:
        raise ValidationError(f"non-integral correction term {best}")
    return -int(best)


# -- Laufer sequence -------------------------------------------------------------

@dataclass(frozen=True)
class LauferState:
    index: int
    k: CharClass
    chi0: int
    tau_partial: int


def _laufer_walk(graph: PlumbingGraph, steps: int, cap: int | None = None):
    """Yield the live pairing list and its central chi, ``steps`` times.

    The list is mutated after each yield; callers copy what they keep.
    """
    central = graph.central
    w = graph.weights
    nb = graph.neighbors
    cur = list(canonical_class(graph).pairings)
    cap = cap if cap is not None else 4 * max(steps, 1) * len(graph) + 64
    work = 0
    for _ in range(steps):
        yield cur, -(cur[central] + w[central]) // 2
        # fire the centre, then every leg vertex that asks for it
        heap: list[int] = []
        v = central
        while True:
            cur[v] += 2 * w[v]
            for u in nb[v]:
                cur[u] += 2
                if u != central and cur[u] == -w[u]:
                    heapq.heappush(heap, u)
            work += 1
            if work > cap:
                raise CapExceeded(f"Laufer sequence exceeded {cap} vertex firings")
            # entries can go stale when a later firing moves a queued vertex
            while heap and cur[heap[0]] != -w[heap[0]]:
                heapq.heappop(heap)
            if not heap:
                break
            v = heapq.heappop(heap)


def laufer_sequence(graph: PlumbingGraph, steps: int,
                    cap: int | None = None) -> Iterator[LauferState]:
    """States ``0..steps-1``; ``tau_partial`` is ``tau(index)``."""
    tau = 0
    for i, (cur, chi0) in enumerate(_laufer_walk(graph, steps, cap)):
        yield LauferState(i, CharClass(tuple(cur)), chi0, tau)
        tau += chi0


def laufer_tau(graph: PlumbingGraph, length: int) -> list[int]:
    """``tau(0..length-1)`` from the Laufer sequence."""
    out = []
    tau = 0
    for _cur, chi0 in _laufer_walk(graph, length):
        out.append(tau)
        tau += chi0
    return out


def laufer_index(graph: PlumbingGraph, k: CharClass) -> int:
    """Central coordinate of ``I^{-1}(k - k_can)/2``."""
    kc = canonical_class(graph).pairings
    diff = [a - b for a, b in zip(k.pairings, kc)]
    val = tree_solve(graph, diff)[graph.central] / 2
    if val.denominator != 1:
        raise ValidationError(f"class has non-integral Laufer index {val}")
    return int(val)


def terminal_classes(graph: PlumbingGraph, n: int) -> tuple[CharClass, CharClass]:
    """The two good classes at the window ends of an ASL family member.

    Both are ``k_can`` lowered by ``2(n-1)`` on the first vertex of the
    ``p`` leg and by 2 on the far end of the ``r`` leg (giving ``a``) or of
    the ``q`` leg (giving ``b``).
    """
    kc = list(canonical_class(graph).pairings)
    p_leg, q_leg, r_leg = graph.legs
    out = []
    for leg in (r_leg, q_leg):
        k = list(kc)
        k[p_leg[0]] -= 2 * (n - 1)
        k[leg[-1]] -= 2
        cls = CharClass(tuple(k))
        if not (cls.is_characteristic(graph) and is_good_terminal(graph, cls)):
            raise ValidationError("window terminal class fails the good-path condition")
        out.append(cls)
    return out[0], out[1]
