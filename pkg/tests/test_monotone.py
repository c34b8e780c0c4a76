import pytest
from hypothesis import given, settings, strategies as st

from brieskorn.exceptions import ValidationError
from brieskorn.graded_root import FUModule, GradedRoot, TauProfile, fu_module, root_from_word
from brieskorn.monotone import (InvariantReport, MonotoneRoot, d_invariant, hf_conn, leaf_pairs,
                                monotone_bars, monotone_subroot, mu_bar, parity_reduction)
from brieskorn.pipeline import analyze, family_invariants, full_root, window_root
from brieskorn.plumbing import build_brieskorn_graph, mu_bar_from_wu
from brieskorn.semigroup import family_triple


def test_printed_forms_of_small_members():
    assert monotone_subroot(full_root(3, 5, 7)[2]).printed == [(2, 0)]
    assert monotone_subroot(full_root(3, 4, 11)[2]).printed == [(2, 0), (2, 2)]
    assert monotone_subroot(full_root(5, 8, 13)[2]).printed == [(4, 0), (2, 2)]
    bare = monotone_subroot(full_root(2, 3, 5)[2])
    assert bare.pairs == () and bare.bottom == -1 and mu_bar(bare) == -1


@pytest.mark.parametrize("fam", "XYZ")
def test_family_forms(fam):
    for n in range(1, 9):
        printed = family_invariants(fam, n).mono.printed
        odd = n % 2
        if fam == "Y" and not odd:
            assert printed == [(2 * n, 0), (n, n)]
        elif fam == "Z" and odd:
            assert printed == [(2 * n, 0), (n + 1, n + 1)]
        else:
            assert printed == [(2 * n, 0)]


def test_word_of_monotone_root():
    m = MonotoneRoot.from_printed([(4, 0), (2, 2)])
    assert m.word() == (-2, 0, -1, 0, -2)
    assert MonotoneRoot.from_printed([(2, 0)]).word() == (-1, 0, -1)
    assert m.label() == "M(4,0; 2,2)"


def test_invalid_monotone_roots():
    with pytest.raises(ValidationError):
        MonotoneRoot(((0, -1),))
    with pytest.raises(ValidationError):
        MonotoneRoot(((-1, 0), (-2, -1)))
    with pytest.raises(ValidationError):
        MonotoneRoot(((-1, -1), (0, 0)))
    with pytest.raises(ValidationError):
        MonotoneRoot.from_printed([(3, 0)])


def test_leaf_pairs_need_symmetry():
    assert leaf_pairs(root_from_word([0])) == []
    with pytest.raises(ValidationError):
        leaf_pairs(root_from_word([0, 2, -1]))


def test_calibration_is_required():
    raw = GradedRoot(TauProfile((0, 1, 0), 1))
    with pytest.raises(ValidationError):
        d_invariant(raw)
    mono = monotone_subroot(raw)
    with pytest.raises(ValidationError):
        mu_bar(mono)
    with pytest.raises(ValidationError):
        hf_conn(mono)


def test_d_with_uncalibrated_root_uses_the_shift():
    g = build_brieskorn_graph(5, 8, 13)
    cal = full_root(5, 8, 13)[2]
    raw = GradedRoot(TauProfile(tuple(v - 21 for v in cal.word), cal.profile.terminal - 21))
    assert d_invariant(raw, g) == d_invariant(cal) == -4


def symmetric_words():
    @st.composite
    def build(draw):
        k = draw(st.integers(0, 8))
        half = [0]
        for i in range(2 * k):
            step = draw(st.integers(1, 3))
            half.append(half[-1] + step if i % 2 == 0 else half[-1] - step)
        if k and draw(st.booleans()):
            # close on the axis with a join above the last leaf
            half.append(half[-1] + draw(st.integers(1, 3)))
            return half + half[-2::-1]
        return half + half[-2::-1] if k else half
    return build()


@settings(max_examples=120, deadline=None)
@given(symmetric_words())
def test_monotone_projection_is_idempotent(word):
    root = root_from_word(word)
    m = monotone_subroot(root)
    again = monotone_subroot(m.root())
    assert again.pairs == m.pairs
    # the monotone root keeps the deepest leaf and the top join
    assert m.bottom == root.profile.minimum
    if m.pairs:
        assert m.pairs[0][0] == min(word)


@pytest.mark.parametrize("fam", "XYZ")
def test_window_suffices(fam):
    for n in range(1, 7):
        p, q, r = family_triple(fam, n)
        full = monotone_subroot(full_root(p, q, r)[2])
        win = monotone_subroot(window_root(fam, n)[2])
        assert full == win


def test_hf_conn_examples():
    assert hf_conn(monotone_subroot(full_root(3, 5, 7)[2])).to_list() == [
        {"grading": 0, "length": 1, "mult": 1}]
    torsion = hf_conn(monotone_subroot(full_root(5, 8, 13)[2])).torsion
    assert torsion == ((0, 1, 1), (2, 2, 1))
    assert hf_conn(monotone_subroot(full_root(2, 3, 5)[2])).torsion == ()


def test_monotone_bars():
    bars = monotone_bars(MonotoneRoot.from_printed([(4, 0), (2, 2)]))
    assert bars.survivor == -2 and bars.bars == ((-2, 0), (-1, 0))


def test_parity_reduction():
    y1 = fu_module(full_root(3, 5, 7)[2], "minus")
    assert y1.torsion == ((-2, 1, 2), (0, 1, 1))
    assert parity_reduction(y1).torsion == ((0, 1, 1),)
    z1 = fu_module(full_root(3, 4, 11)[2], "minus")
    assert parity_reduction(z1).torsion == ()


def test_mu_bar_matches_wu_class():
    for triple in [(2, 3, 5), (3, 5, 7), (3, 4, 11), (5, 8, 13), (5, 7, 17)]:
        an = analyze(*triple)
        assert an.mu_bar == mu_bar_from_wu(an.graph)
    assert mu_bar_from_wu(build_brieskorn_graph(2, 3, 5)) == -1


def test_report_json_round_trip():
    rep = analyze(5, 8, 13).report
    back = InvariantReport.from_json(rep.to_json())
    assert back == rep
    assert rep.to_dict()["monotone"] == [[4, 0], [2, 2]]
    assert rep.phi == {1: -1, 2: 1}
    assert FUModule.from_list(rep.to_dict()["hf_conn"]) == rep.hf_conn
