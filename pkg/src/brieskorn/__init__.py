"""Graded roots, monotone subroots and homology cobordism invariants of
Brieskorn spheres, computed from semigroups and from lattice walks."""

from .cobordism import StandardComplexSum, independence_matrix, phi, to_standard_complex
from .exceptions import BrieskornError, CapExceeded, InputError, ValidationError
from .graded_root import (FUModule, GradedRoot, GradingCalibration, TauProfile,
                          brute_module_oracle, fu_module, persistence_bars, root_from_tau,
                          tau_from_delta)
from .lattice_walk import (d_via_os, follow_path, good_initial_classes, laufer_index,
                           laufer_sequence, terminal_classes)
from .monotone import (InvariantReport, MonotoneRoot, d_invariant, hf_conn, leaf_pairs,
                       monotone_subroot, mu_bar, parity_reduction)
from .pipeline import analyze, family_invariants, verify_tables
from .plumbing import (CharClass, LatticeVector, PlumbingGraph, add_pd, bad_vertices,
                       build_brieskorn_graph, canonical_class, chi, intersection_data,
                       inverse_entry_via_path, shift_constant)
from .semigroup import (DeltaSequence, PackedSequence, SemigroupData, delta_sequence,
                        family_triple, family_window, packed_expand, semigroup_data,
                        window_positions, window_reduced_delta)

__version__ = "0.1.0"
