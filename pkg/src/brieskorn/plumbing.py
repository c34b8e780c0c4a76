"""Star-shaped plumbing graphs of Brieskorn spheres and their lattice data.

Vertices are numbered ``0..|G|-1``.  Vertex 0 is the central vertex and the
three legs follow in order of increasing multiplicity (the ``p`` leg, then
``q``, then ``r``), each listed from the vertex adjacent to the centre
outwards.  Characteristic classes are stored as pairing vectors
``k[j] = <k, v_j>``; lattice vectors as coefficient vectors in the basis
``v_j``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import _linalg
from .exceptions import InputError, ValidationError


def check_triple(p: int, q: int, r: int) -> tuple[int, int, int]:
    """Validate a Brieskorn triple and return it as plain ints."""
    p, q, r = int(p), int(q), int(r)
    if not 1 < p < q < r:
        raise InputError(f"need 1 < p < q < r, got ({p}, {q}, {r})")
    if gcd(p, q) != 1 or gcd(p, r) != 1 or gcd(q, r) != 1:
        raise InputError(f"({p}, {q}, {r}) is not pairwise coprime")
    return p, q, r


def is_asl(p: int, q: int, r: int) -> bool:
    """True when the triple satisfies ``pq + pr - qr = 1``."""
    return p * q + p * r - q * r == 1


def negative_continued_fraction(a: int, w: int) -> list[int]:
    """Coefficients ``[b_1, ..., b_s]`` with ``a/w = b_1 - 1/(b_2 - ...)``."""
    out = []
    while w:
        b = -(-a // w)
        out.append(b)
        a, w = w, b * w - a
    return out


def seifert_invariants(p: int, q: int, r: int) -> tuple[int, list[tuple[int, int]]]:
    """Central weight ``e_0`` and normalised pairs ``(alpha_i, omega_i)``.

    Solves ``e_0 + sum(omega_i / alpha_i) = -1 / (pqr)`` with
    ``0 < omega_i < alpha_i``.
    """
    total = p * q * r
    pairs = []
    acc = 0
    for a in (p, q, r):
        m = total // a
        w = (-pow(m, -1, a)) % a
        pairs.append((a, w))
        acc += w * m
    e0, rem = divmod(-1 - acc, total)
    if rem:
        raise ValidationError("Seifert invariants do not give a homology sphere")
    return e0, pairs


@dataclass(frozen=True)
class CharClass:
    """A characteristic class, stored by its pairings with the vertices."""

    pairings: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairings", tuple(int(v) for v in self.pairings))

    def __len__(self):
        return len(self.pairings)

    def __getitem__(self, j):
        return self.pairings[j]

    def is_characteristic(self, graph: "PlumbingGraph") -> bool:
        return len(self.pairings) == len(graph) and all(
            (k + e) % 2 == 0 for k, e in zip(self.pairings, graph.weights))


@dataclass(frozen=True)
class LatticeVector:
    """An element of H_2 written in the vertex basis."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(int(v) for v in self.coefficients))

    @classmethod
    def basis(cls, size: int, j: int, mult: int = 1) -> "LatticeVector":
        c = [0] * size
        c[j] = mult
        return cls(tuple(c))


@dataclass(frozen=True)
class PlumbingGraph:
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    central: int = 0
    legs: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(e) for e in self.weights))
        object.__setattr__(self, "edges", tuple(
            (min(int(u), int(v)), max(int(u), int(v))) for u, v in self.edges))
        object.__setattr__(self, "legs", tuple(tuple(leg) for leg in self.legs))

    def __len__(self):
        return len(self.weights)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in self.weights]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = len(self)
        m = [[0] * n for _ in range(n)]
        for j, e in enumerate(self.weights):
            m[j][j] = e
        for u, v in self.edges:
            m[u][v] = m[v][u] = 1
        return tuple(tuple(row) for row in m)

    @cached_property
    def tree_pivots(self) -> tuple[Fraction, ...]:
        """Pivots of Gaussian elimination taken leaves-first.

        On a tree this order creates no fill-in, so each pivot only absorbs
        the reciprocal pivots of its children.  Their product is the
        determinant and all are negative exactly when ``I`` is negative
        definite.
        """
        if not self.is_tree():
            raise ValidationError("tree pivots need a tree")
        order, parent = [self.central], {self.central: None}
        for u in order:
            for v in self.neighbors[u]:
                if v not in parent:
                    parent[v] = u
                    order.append(v)
        piv: dict[int, Fraction] = {}
        for v in reversed(order):
            val = Fraction(self.weights[v])
            for u in self.neighbors[v]:
                if parent.get(u) == v:
                    if piv[u] == 0:
                        raise ValidationError("zero pivot in tree elimination")
                    val -= 1 / piv[u]
            piv[v] = val
        return tuple(piv[v] for v in reversed(order))

    @cached_property
    def det(self) -> int:
        if self.is_tree():
            try:
                out = Fraction(1)
                for x in self.tree_pivots:
                    out *= x
                return int(out)
            except ValidationError:
                pass
        return _linalg.det_bareiss(self.matrix)

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(row) for row in _linalg.inverse(self.matrix))

    def is_tree(self) -> bool:
        n = len(self)
        if n == 0 or len(set(self.edges)) != n - 1:
            return False
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return len(seen) == n

    def is_negative_definite(self) -> bool:
        if self.is_tree():
            try:
                return all(x < 0 for x in self.tree_pivots)
            except ValidationError:
                return False
        # Sylvester: the k-th leading minor of I has sign (-1)^k.
        minors = _linalg.leading_minors(self.matrix)
        return len(minors) == len(self) and all(
            (m > 0) if k % 2 == 0 else (m < 0)
            for k, m in enumerate(minors, start=1))

    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def validate(self) -> "PlumbingGraph":
        if not self.is_tree():
            raise ValidationError("plumbing graph is not a tree")
        if not self.is_negative_definite():
            raise ValidationError("intersection matrix is not negative definite")
        if not self.is_unimodular():
            raise ValidationError(f"determinant {self.det} is not +-1")
        return self

    def path(self, v: int, w: int) -> list[int]:
        """Vertices of the unique path from ``v`` to ``w``."""
        parent = {v: None}
        todo = deque([v])
        while todo:
            u = todo.popleft()
            if u == w:
                break
            for x in self.neighbors[u]:
                if x not in parent:
                    parent[x] = u
                    todo.append(x)
        out = [w]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out[::-1]

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": j, "weight": e} for j, e in enumerate(self.weights)],
            "edges": [list(e) for e in self.edges],
            "central": self.central,
            "legs": [list(leg) for leg in self.legs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PlumbingGraph":
        verts = sorted(data["vertices"], key=lambda v: v["id"])
        if [v["id"] for v in verts] != list(range(len(verts))):
            raise InputError("vertex ids must be 0..n-1")
        return cls(tuple(v["weight"] for v in verts),
                   tuple(tuple(e) for e in data["edges"]),
                   data.get("central", 0),
                   tuple(tuple(leg) for leg in data.get("legs", ())))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self, name: str = "plumbing") -> str:
        lines = [f"graph {name} {{", "  node [shape=circle];"]
        for j, e in enumerate(self.weights):
            extra = ", style=bold" if j == self.central else ""
            lines.append(f'  v{j} [label="{e}"{extra}];')
        for u, v in self.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_brieskorn_graph(p: int, q: int, r: int) -> PlumbingGraph:
    """Negative definite star-shaped plumbing bounding ``Sigma(p, q, r)``."""
    p, q, r = check_triple(p, q, r)
    e0, pairs = seifert_invariants(p, q, r)
    weights = [e0]
    edges = []
    legs = []
    for a, w in pairs:
        prev = 0
        leg = []
        for b in negative_continued_fraction(a, w):
            j = len(weights)
            weights.append(-b)
            edges.append((prev, j))
            leg.append(j)
            prev = j
        legs.append(tuple(leg))
    graph = PlumbingGraph(tuple(weights), tuple(edges), 0, tuple(legs))
    graph.validate()
    if is_asl(p, q, r) and graph.weights[0] != -2:
        raise ValidationError("ASL graph with central weight != -2")
    return graph


def intersection_data(graph: PlumbingGraph):
    """``(I, det I, I^{-1})`` with the inverse as exact rationals."""
    return graph.matrix, graph.det, graph.inverse


def forest_det(graph: PlumbingGraph, keep: Iterable[int]) -> int:
    """Determinant of the intersection matrix restricted to ``keep``.

    The induced subgraph of a tree is a forest, so the determinant is the
    product over components of leaf-first elimination pivots.  A zero pivot
    (impossible for negative definite input) falls back to Bareiss.
    """
    keep = sorted(set(keep))
    inside = set(keep)
    out = Fraction(1)
    seen: set[int] = set()
    for start in keep:
        if start in seen:
            continue
        order, parent = [start], {start: None}
        for u in order:
            for v in graph.neighbors[u]:
                if v in inside and v not in parent:
                    parent[v] = u
                    order.append(v)
        seen.update(order)
        piv: dict[int, Fraction] = {}
        for v in reversed(order):
            val = Fraction(graph.weights[v])
            for u in graph.neighbors[v]:
                if u in inside and parent.get(u) == v:
                    if piv[u] == 0:
                        return _linalg.det_bareiss([[graph.matrix[a][b] for b in keep]
                                                    for a in keep])
                    val -= 1 / piv[u]
            piv[v] = val
        for x in piv.values():
            out *= x
    return int(out)


def inverse_entry_via_path(graph: PlumbingGraph, v: int, w: int) -> Fraction:
    """``I^{-1}_{vw}`` from the determinant of the graph minus the v-w path.

    Valid for connected negative definite trees, where every inverse entry
    is negative.
    """
    on_path = set(graph.path(v, w))
    keep = [j for j in range(len(graph)) if j not in on_path]
    return -abs(Fraction(forest_det(graph, keep), graph.det))


def canonical_class(graph: PlumbingGraph) -> CharClass:
    return CharClass(tuple(-e - 2 for e in graph.weights))


def chi(graph: PlumbingGraph, k: CharClass, v: int) -> int:
    """``-(<k, v> + e_v) / 2`` for a vertex ``v``."""
    s = k[v] + graph.weights[v]
    if s % 2:
        raise ValidationError(f"class is not characteristic at vertex {v}")
    return -s // 2


def pd(graph: PlumbingGraph, x: LatticeVector | Sequence[int]) -> tuple[int, ...]:
    """Pairing vector of the Poincare dual of ``x`` (that is, ``I x``)."""
    c = x.coefficients if isinstance(x, LatticeVector) else tuple(x)
    return tuple(sum(a * b for a, b in zip(row, c)) for row in graph.matrix)


def add_pd(graph: PlumbingGraph, k: CharClass, x: LatticeVector) -> CharClass:
    """``k + 2 PD(x)``."""
    return CharClass(tuple(a + 2 * b for a, b in zip(k.pairings, pd(graph, x))))


def tree_solve(graph: PlumbingGraph, rhs: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Solve ``I x = rhs`` exactly by leaf-first elimination on the tree."""
    order, parent = [graph.central], {graph.central: None}
    for u in order:
        for v in graph.neighbors[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
    piv: dict[int, Fraction] = {}
    acc: dict[int, Fraction] = {}
    for v in reversed(order):
        a, b = Fraction(graph.weights[v]), Fraction(rhs[v])
        for u in graph.neighbors[v]:
            if parent.get(u) == v:
                a -= 1 / piv[u]
                b -= acc[u] / piv[u]
        if a == 0:
            raise ValidationError("singular intersection matrix")
        piv[v], acc[v] = a, b
    x: dict[int, Fraction] = {}
    for v in order:
        up = parent[v]
        x[v] = (acc[v] - (x[up] if up is not None else 0)) / piv[v]
    return tuple(x[v] for v in range(len(graph)))


def square(graph: PlumbingGraph, k: CharClass | Sequence[int]) -> Fraction:
    """``k^2 = k^T I^{-1} k``."""
    vec = k.pairings if isinstance(k, CharClass) else tuple(k)
    if not any(vec):
        return Fraction(0)
    y = tree_solve(graph, vec)
    return sum((a * b for a, b in zip(vec, y) if a), Fraction(0))


def shift_constant(graph: PlumbingGraph) -> Fraction:
    """``(k_can^2 + |G|) / 4``."""
    return (square(graph, canonical_class(graph)) + len(graph)) / 4


def bad_vertices(graph: PlumbingGraph) -> list[int]:
    return [j for j, e in enumerate(graph.weights) if e > -graph.degree(j)]


def lattice_coordinates(graph: PlumbingGraph, delta: Iterable[int]) -> tuple[Fraction, ...]:
    """Solve ``I x = delta`` exactly."""
    return tree_solve(graph, tuple(delta))


def wu_class(graph: PlumbingGraph) -> LatticeVector:
    """The 0/1 vector ``w`` with ``I w = diag(I)`` mod 2 (unique when det is odd)."""
    n = len(graph)
    if graph.det % 2 == 0:
        raise ValidationError("Wu class needs an odd determinant")
    rows = []
    for i in range(n):
        mask = sum(1 << j for j in range(n) if graph.matrix[i][j] % 2)
        rows.append([mask, graph.weights[i] % 2])
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if rows[i][0] >> c & 1), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(n):
            if i != r and rows[i][0] >> c & 1:
                rows[i][0] ^= rows[r][0]
                rows[i][1] ^= rows[r][1]
        pivots.append(c)
        r += 1
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][1]
    return LatticeVector(tuple(x))


def mu_bar_from_wu(graph: PlumbingGraph) -> int:
    """Neumann-Siebenmann invariant ``(signature - w^2)/8`` of the plumbing."""
    w = wu_class(graph).coefficients
    w2 = sum(a * b for a, b in zip(w, pd(graph, w)))
    val = -len(graph) - w2
    if val % 8:
        raise ValidationError("signature minus w^2 is not divisible by 8")
    return val // 8
