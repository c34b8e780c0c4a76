import pytest
from hypothesis import given, settings, strategies as st

from brieskorn.exceptions import ValidationError
from brieskorn.graded_root import (FUModule, GradedRoot, GradingCalibration, TauProfile,
                                   brute_module_oracle, fu_module, persistence_bars,
                                   root_from_tau, root_from_word, tau_from_delta)
from brieskorn.monotone import MonotoneRoot
from brieskorn.pipeline import full_root, window_root
from brieskorn.semigroup import delta_sequence, family_triple, semigroup_data

from conftest import naive_tau


def profile_of(triple):
    return tau_from_delta(delta_sequence(semigroup_data(*triple)))


def test_tau_words():
    assert profile_of((2, 3, 5)).critical == (0,)
    assert profile_of((3, 5, 7)).critical == (0, 1, -1, 0, -1, 1, 0)
    assert profile_of((3, 4, 11)).critical == (0, 1, -1, 0, -1, 0, -1, 1, 0)
    assert profile_of((3, 4, 11)).terminal == 0


def test_tau_word_matches_prefix_sums():
    for triple in [(3, 5, 7), (5, 8, 13), (2, 7, 11), (5, 7, 17)]:
        tau = naive_tau(*triple)
        tp = profile_of(triple)
        assert [tau[i] for i in tp.positions] == list(tp.critical)
        assert tp.minimum == min(tau)


def test_window_profiles_end_on_an_ascent():
    tp = tau_from_delta(delta_sequence(semigroup_data(3, 5, 7)).restrict(15, 21))
    assert tp.critical == (0, 1, 0) and tp.terminal == 1 and tp.anchor == 15


def test_roots_of_small_spheres():
    r = root_from_tau(profile_of((3, 5, 7)))
    assert [t for t, _ in r.leaves] == [0, -1, -1, 0] and r.joins == [1, 0, 1]
    r = root_from_tau(profile_of((3, 4, 11)))
    assert [t for t, _ in r.leaves] == [0, -1, -1, -1, 0] and r.joins == [1, 0, 0, 1]
    assert [m for _, m in r.leaves] == [8, 6, 4, 2, 0]
    bare = root_from_tau(profile_of((2, 3, 5)))
    assert bare.leaves == [(0, 0)] and bare.joins == []


def test_non_alternating_profiles_are_rejected():
    with pytest.raises(ValidationError):
        TauProfile((0, 1, 1), 1)
    with pytest.raises(ValidationError):
        TauProfile((0, 1), 1)
    with pytest.raises(ValidationError):
        TauProfile((0, -1, 0), 0)


def test_persistence_examples():
    assert persistence_bars(root_from_word([0])).bars == ()
    pb = persistence_bars(root_from_tau(profile_of((3, 5, 7))))
    assert pb.survivor == -1 and pb.bars == ((-1, 0), (0, 1), (0, 1))
    pb = persistence_bars(root_from_tau(profile_of((3, 4, 11))))
    assert pb.survivor == -1 and pb.bars == ((-1, 0), (-1, 0), (0, 1), (0, 1))


def test_fu_module_examples():
    assert fu_module(root_from_word([0])).torsion == ()
    y1 = full_root(3, 5, 7)[2]
    assert fu_module(y1, "minus").lengths() == [1, 1, 1]
    y2 = full_root(5, 8, 13)[2]
    lengths = fu_module(y2, "minus").lengths()
    assert 2 in lengths and 1 in lengths
    # plus flavour puts the tower bottom at d
    assert fu_module(y2, "plus").tower_bottom == -4
    assert fu_module(full_root(2, 3, 5)[2], "plus").tower_bottom == -2


def test_calibration_only_moves_gradings():
    raw = root_from_tau(profile_of((5, 8, 13)))
    cal = GradingCalibration(-42).normalise(raw)
    assert cal.profile.minimum == raw.profile.minimum + 21
    assert fu_module(raw, "minus", GradingCalibration(-42)) == fu_module(cal, "minus")
    a = sorted(n for _, n, m in fu_module(raw).torsion for _ in range(m))
    b = sorted(n for _, n, m in fu_module(cal).torsion for _ in range(m))
    assert a == b
    with pytest.raises(ValidationError):
        GradingCalibration(3)


def test_module_oracle_examples():
    assert brute_module_oracle(root_from_word([0])).bars == ()
    m = MonotoneRoot.from_printed([(2, 0), (2, 2)]).root()
    assert brute_module_oracle(m).bars == ((-1, 0), (-1, 0))
    for n in range(1, 6):
        m = MonotoneRoot.from_printed([(2 * n, 0)]).root()
        assert brute_module_oracle(m).bars == ((-n, 0),)
    with pytest.raises(ValidationError):
        brute_module_oracle(m, depth=0)


@pytest.mark.parametrize("fam", "XYZ")
def test_family_roots_agree_with_oracle(fam):
    for n in range(1, 5):
        root = full_root(*family_triple(fam, n))[2]
        assert persistence_bars(root) == brute_module_oracle(root)
        w = window_root(fam, n)[2]
        assert persistence_bars(w) == brute_module_oracle(w)
        # the window carries the lowest leaf
        assert w.profile.minimum == root.profile.minimum


def alternating_words(max_points=40):
    @st.composite
    def build(draw):
        k = draw(st.integers(0, (max_points - 1) // 2))
        w = [draw(st.integers(-5, 5))]
        for i in range(2 * k):
            step = draw(st.integers(1, 4))
            w.append(w[-1] + step if i % 2 == 0 else w[-1] - step)
        return w
    return build()


@settings(max_examples=150, deadline=None)
@given(alternating_words())
def test_persistence_matches_oracle_on_random_profiles(word):
    root = root_from_word(word)
    pb = persistence_bars(root)
    assert pb == brute_module_oracle(root, depth=2)
    assert len(pb.bars) == len(word[::2]) - 1
    assert all(j - m >= 1 for m, j in pb.bars)
    # rank at each level = 1 + bars alive there = number of vertices there
    for h in range(min(word), max(word) + 2):
        alive = sum(1 for m, j in pb.bars if m <= h < j)
        assert 1 + alive == len(root.components(h))


@settings(max_examples=30, deadline=None)
@given(alternating_words(), st.integers(-10, 10))
def test_bar_lengths_are_shift_invariant(word, shift):
    a = persistence_bars(root_from_word(word))
    b = persistence_bars(root_from_word([v + shift for v in word]))
    assert [j - m for m, j in a.bars] == [j - m for m, j in b.bars]
    assert b.survivor == a.survivor + shift


def test_full_profiles_are_palindromic():
    for triple in [(3, 5, 7), (2, 3, 7), (5, 7, 17), (7, 10, 23), (2, 11, 13)]:
        assert profile_of(triple).is_palindromic()


def test_json_round_trip():
    root = full_root(7, 10, 23)[2]
    assert GradedRoot.from_json(root.to_json()) == root
    tp = root.profile
    assert TauProfile.from_dict(tp.to_dict()) == tp


def test_tree_and_dot():
    root = root_from_tau(profile_of((3, 5, 7)))
    levels, edges = root.tree()
    assert [len(levels[h]) for h in sorted(levels)] == [2, 3, 1, 1]
    dot = root.to_dot()
    assert dot.count("->") == len(edges) == 6
    assert len(levels[max(levels)]) == 1


def test_fu_module_list_round_trip():
    m = FUModule(0, ((0, 1, 2), (2, 2, 1)))
    assert FUModule.from_list(m.to_list(), 0) == m
    with pytest.raises(ValidationError):
        FUModule(0, ((0, 0, 1),))
