"""End-to-end computations shared by the library entry points and the CLI.

Two routes produce the same invariants.  The brute route sieves the whole
semigroup and builds the full graded root.  The closed-form route, for the
three families only, assembles the window ``[a, b]`` from packed sequences
and anchors it with the terminal class at ``a``.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .cobordism import StandardComplexSum, phi_vector, to_standard_complex
from .exceptions import CapExceeded, InputError, ValidationError
from .graded_root import FUModule, GradedRoot, GradingCalibration, tau_from_delta
from .lattice_walk import correction_term, laufer_index, terminal_classes
from .monotone import (InvariantReport, MonotoneRoot, d_invariant, hf_conn, monotone_subroot,
                       mu_bar)
from .plumbing import PlumbingGraph, build_brieskorn_graph, check_triple, shift_constant
from .semigroup import (DeltaSequence, SemigroupData, delta_sequence, family_of, family_triple,
                        family_window, sieve, window_positions, window_reduced_delta)
from .tables import KNOWN_DEVIATIONS, expected

log = logging.getLogger(__name__)

MAX_N0 = 2 * 10 ** 7
CACHE_ENV = "BRIESKORN_CACHE"


def cached_semigroup(p: int, q: int, r: int, max_n0: int = MAX_N0) -> SemigroupData:
    """Sieve, optionally memoised on disk under ``$BRIESKORN_CACHE``."""
    p, q, r = check_triple(p, q, r)
    x, y, z = p * q, p * r, q * r
    n0 = p * q * r - x - y - z
    if n0 > max_n0:
        raise CapExceeded(f"N0 = {n0} exceeds the cap {max_n0}")
    path = None
    cache = os.environ.get(CACHE_ENV)
    if cache:
        path = Path(cache) / f"sieve_{p}_{q}_{r}.npy"
        if path.exists():
            members = np.load(path)
            s = tuple(int(v) for v in members)
            return SemigroupData(p, q, r, s, tuple(n0 - v for v in reversed(s)))
    members = np.flatnonzero(sieve((x, y, z), n0))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.save(path, members)
    s = tuple(int(v) for v in members)
    return SemigroupData(p, q, r, s, tuple(n0 - v for v in reversed(s)))


@dataclass(frozen=True)
class Analysis:
    p: int
    q: int
    r: int
    N0: int
    graph: PlumbingGraph = field(repr=False)
    root: GradedRoot = field(repr=False)
    mono: MonotoneRoot
    d: int
    mu_bar: int
    hf_conn: FUModule
    complex: StandardComplexSum

    @property
    def report(self) -> InvariantReport:
        return InvariantReport(self.p, self.q, self.r, self.N0, self.d, self.mu_bar,
                               tuple(self.mono.printed), self.hf_conn,
                               phi_vector(self.complex))


def _finish(p, q, r, graph, root) -> Analysis:
    mono = monotone_subroot(root)
    n0 = p * q * r - p * q - p * r - q * r
    return Analysis(p, q, r, n0, graph, root, mono, d_invariant(root), mu_bar(mono),
                    hf_conn(mono), to_standard_complex(mono))


@lru_cache(maxsize=64)
def full_root(p: int, q: int, r: int, max_n0: int = MAX_N0) -> tuple[PlumbingGraph, DeltaSequence, GradedRoot]:
    """Graph, full delta sequence and calibrated full graded root."""
    graph = build_brieskorn_graph(p, q, r)
    ds = delta_sequence(cached_semigroup(p, q, r, max_n0))
    calib = GradingCalibration(shift_constant(graph))
    root = calib.normalise(GradedRoot(tau_from_delta(ds)))
    return graph, ds, root


def analyze(p: int, q: int, r: int, max_n0: int = MAX_N0) -> Analysis:
    """Full pipeline from the semigroup of an arbitrary triple."""
    p, q, r = check_triple(p, q, r)
    graph, _ds, root = full_root(p, q, r, max_n0)
    return _finish(p, q, r, graph, root)


@lru_cache(maxsize=256)
def window_root(family: str, n: int) -> tuple[PlumbingGraph, DeltaSequence, GradedRoot]:
    """Calibrated root of the window, built without a sieve.

    The window starts at a leaf of level ``d/2``; ``d`` comes from the
    terminal class whose Laufer index is ``a``.
    """
    p, q, r = family_triple(family, n)
    graph = build_brieskorn_graph(p, q, r)
    k_a, k_b = terminal_classes(graph, n)
    a, b = window_positions(family, n)
    if (laufer_index(graph, k_a), laufer_index(graph, k_b)) != (a, b):
        raise ValidationError("terminal classes do not sit at the window ends")
    val = correction_term(graph, k_a)
    if val != correction_term(graph, k_b) or val.denominator != 1 or val % 2:
        raise ValidationError("window ends give inconsistent correction terms")
    ds = family_window(family, n)
    root = GradedRoot(tau_from_delta(ds, start=-int(val) // 2), calibrated=True)
    return graph, ds, root


def family_invariants(family: str, n: int, mode: str = "closed-form",
                      max_n0: int = MAX_N0) -> Analysis:
    """Invariants of ``X_n``, ``Y_n`` or ``Z_n``.

    ``mode="both"`` runs both routes and raises if they disagree anywhere.
    """
    p, q, r = family_triple(family, n)
    if mode == "brute":
        return analyze(p, q, r, max_n0)
    if mode not in ("closed-form", "both"):
        raise InputError(f"unknown mode {mode!r}")
    graph, _ds, root = window_root(family, n)
    closed = _finish(p, q, r, graph, root)
    if mode == "both":
        brute = analyze(p, q, r, max_n0)
        for name in ("d", "mu_bar", "mono", "hf_conn", "complex"):
            if getattr(brute, name) != getattr(closed, name):
                raise ValidationError(
                    f"{family}_{n}: {name} differs between routes: "
                    f"{getattr(brute, name)} vs {getattr(closed, name)}")
        full_window = delta_sequence(cached_semigroup(p, q, r, max_n0)).restrict(
            *window_positions(family, n))
        if full_window != _ds:
            raise ValidationError(f"{family}_{n}: closed-form window differs from the sieve")
    return closed


def analyze_any(p: int, q: int, r: int, mode: str = "brute", max_n0: int = MAX_N0) -> Analysis:
    fam = family_of(p, q, r)
    if mode == "brute":
        return analyze(p, q, r, max_n0)
    if fam is None:
        raise InputError("closed-form mode is only available for the X, Y, Z families")
    return family_invariants(fam[0], fam[1], mode, max_n0)


# -- table verification ------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    family: str
    n: int
    name: str
    expected: object
    computed: object
    status: str  # "pass", "fail" or "deviation"
    note: str = ""

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "cell": self.name,
                "expected": _plain(self.expected), "computed": _plain(self.computed),
                "status": self.status, "note": self.note}


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): x for k, x in v.items()}
    return v


def verify_family(family: str, n: int, mode: str = "closed-form") -> list[Cell]:
    an = family_invariants(family, n, mode)
    exp = expected(family, n)
    cells = []

    def check(name, want, got, deviation=None):
        if want == got:
            cells.append(Cell(family, n, name, want, got, "pass"))
        elif deviation:
            cells.append(Cell(family, n, name, want, got, "deviation",
                              f"{deviation}: {KNOWN_DEVIATIONS[deviation]}"))
        else:
            cells.append(Cell(family, n, name, want, got, "fail"))

    check("d", exp.d, an.d)
    check("mu_bar", exp.mu_bar, an.mu_bar)
    check("monotone", exp.monotone, tuple(an.mono.printed))
    check("phi", exp.phi, phi_vector(an.complex))
    check("window", window_reduced_delta(family, n), family_window(family, n).reduced)
    want_len = tuple(sorted(ln for _, ln in exp.hf_conn))
    check("hf_conn_lengths", want_len, tuple(sorted(an.hf_conn.lengths())))
    # gradings per summand: exact matches first, then pair leftovers by length
    pool = [(g, ln) for g, ln, m in an.hf_conn.torsion for _ in range(m)]
    matched = {}
    for i, w in enumerate(exp.hf_conn):
        if w in pool:
            pool.remove(w)
            matched[i] = w[0]
    for i, w in enumerate(exp.hf_conn):
        if i in matched:
            continue
        same = [c for c in pool if c[1] == w[1]]
        if same:
            pool.remove(same[0])
            matched[i] = same[0][0]
    for i, w in enumerate(exp.hf_conn):
        dev = None
        if family == "Z" and n % 2 == 1 and i == 1:
            dev = "Z_ODD_SECOND_SUMMAND_GRADING"
        check(f"hf_conn_grading_{i + 1}", w[0], matched.get(i), dev)
    return cells


def verify_tables(family: str, n_max: int, mode: str = "closed-form") -> list[Cell]:
    if n_max < 1:
        raise InputError("max n must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        out += verify_family(family, n, mode)
    return out
