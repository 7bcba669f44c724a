from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from unicover.classes import conjugacy_orbits
from unicover.diagram import (
    DiagramError,
    DiagramParseError,
    IllegalMove,
    MarkedDiagram,
    components,
    equivalent,
    flip,
    hat_I,
    is_normal,
    legal_moves,
    normalization_witness,
    normalize,
    parse_diagram,
    permute,
    render_diagram,
    shift,
    torus_hat,
)

P = parse_diagram


def all_markings(t, r):
    for mask in range(1 << r):
        yield MarkedDiagram(t, r, frozenset(i + 1 for i in range(r) if mask >> i & 1))


def lengths(d):
    return sorted(len(k) for k in components(d))


# -- DSL ----------------------------------------------------------------------------

def test_parse_examples():
    assert P("A4:xoxo").marked == {1, 3}
    assert P("A4:oooo").marked == frozenset()
    assert P("D6:xxoxxo").marked == {1, 2, 4, 5}


@pytest.mark.parametrize("text,pos", [("A4:xox", 6), ("A4:xoxoo", 7), ("A4:xoyo", 5), ("H4:xoxo", 0), ("A4xoxo", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(DiagramParseError) as err:
        P(text)
    assert err.value.position == pos


def test_render_examples():
    assert render_diagram(MarkedDiagram("A", 4, frozenset({1, 3}))) == "A4:xoxo"
    assert render_diagram(MarkedDiagram("A", 2, frozenset())) == "A2:oo"


def test_render_ascii_fill_states():
    art = render_diagram(MarkedDiagram("C", 4, frozenset({1, 2, 4})), style="ascii")
    glyphs = [ch for ch in art if ch in "●○"]
    assert glyphs == ["●", "●", "○", "●"]
    assert "=" in art


def test_render_ascii_d_branch():
    art = render_diagram(P("D5:xoxox"), style="ascii")
    assert sum(ch in "●○" for ch in art) == 5


@pytest.mark.parametrize("t,r", [("A", 12), ("B", 10), ("C", 10), ("D", 10), ("E", 8), ("F", 4), ("G", 2)])
def test_round_trip_exhaustive(t, r):
    for d in all_markings(t, r):
        assert P(render_diagram(d)) == d


@given(st.sampled_from("ABCD"), st.integers(4, 40), st.data())
def test_round_trip_random(t, r, data):
    marked = data.draw(st.frozensets(st.integers(1, r)))
    d = MarkedDiagram(t, r, marked)
    assert P(render_diagram(d)) == d


# -- components and moves ---------------------------------------------------

def test_components_examples():
    assert components(P("A7:xxooxox")) == [(1, 2), (5,), (7,)]
    assert components(P("A4:oooo")) == []
    assert components(P("D4:ooxx")) == [(3,), (4,)]
    assert components(P("D5:ooxxx")) == [(3, 4, 5)]


def test_shift_examples():
    assert shift(P("A4:oxxo"), (2, 3), "left") == P("A4:xxoo")
    with pytest.raises(IllegalMove):
        shift(P("A4:xxoo"), (1, 2), "left")
    with pytest.raises(IllegalMove):
        shift(P("C4:oxxo"), (2, 3), "right")


def test_shift_needs_two_clear_nodes():
    with pytest.raises(IllegalMove):
        shift(P("A5:xooxo"), (4,), "left", positions=2)
    assert shift(P("A5:xooox"), (5,), "left") == P("A5:xooxo")


def test_permute_examples():
    assert permute(P("A6:xxoxoo"), (1, 2), (4,)) == P("A6:xoxxoo")
    assert permute(P("A5:xoxoo"), (1,), (3,)) == P("A5:xoxoo")
    with pytest.raises(IllegalMove):
        permute(P("A6:xxooxo"), (1, 2), (5,))


def test_flip_swaps_fork_for_odd_length_block():
    assert flip(P("D5:ooxxo"), (3, 4)) == P("D5:ooxox")
    with pytest.raises(IllegalMove):
        flip(P("D5:oooxo"), (4,))


# -- normal form ------------------------------------------------------------------

def test_normalize_examples():
    assert normalize(P("A7:xxooxoo")) == P("A7:oooxxox")
    # both A1 pieces pack against alpha_5; alpha_6 stays unmarked
    assert normalize(P("C6:xooxoo")) == P("C6:ooxoxo")
    assert normalize(P("A4:oooo")) == P("A4:oooo")


def test_hat_examples():
    assert hat_I(P("A7:oooxxox")) == {4, 5, 6, 7}
    assert hat_I(P("C6:oooxox")) == {4, 5, 6}
    assert hat_I(P("C6:ooxoxo")) == {3, 4, 5, 6}
    assert hat_I(P("A3:oox")) == {3}
    with pytest.raises(DiagramError):
        hat_I(P("A3:ooo"))


def test_torus_hat_pairs_lone_special_node():
    assert torus_hat(P("D6:ooooox")) == {5, 6}
    assert torus_hat(P("C6:ooooox")) == {5, 6}
    assert torus_hat(P("C6:ooxoxo")) == hat_I(P("C6:ooxoxo"))


def test_equivalent_examples():
    assert equivalent(P("A4:oxxo"), P("A4:xxoo"))
    assert not equivalent(P("A4:xoxo"), P("A4:xxoo"))
    assert equivalent(P("A6:xxoxoo"), P("A6:xoxxoo"))
    with pytest.raises(DiagramError):
        equivalent(P("A4:oxxo"), P("A5:oxxoo"))


def test_very_even_pair_kept_distinct():
    assert not equivalent(P("D4:xoxo"), P("D4:xoox"))
    assert equivalent(P("D5:xoxxo"), P("D5:xxoox"))


@pytest.mark.parametrize("t,r", [("A", 8), ("B", 7), ("C", 7), ("D", 7), ("D", 8)])
def test_normalize_idempotent_and_moves_stay_in_fiber(t, r):
    for d in all_markings(t, r):
        nf = normalize(d)
        assert normalize(nf) == nf
        assert is_normal(nf)
        for mv in legal_moves(d):
            assert lengths(mv.target) == lengths(d)
            assert normalize(mv.target) == nf


@pytest.mark.parametrize("t,lo", [("A", 1), ("B", 2), ("C", 2), ("D", 3)])
def test_normalize_fibers_match_elementary_conjugation_orbits(t, lo):
    for r in range(lo, 8):
        orbits = conjugacy_orbits(t, r, with_parabolic=False)
        fibers = {}
        for d in all_markings(t, r):
            fibers.setdefault(normalize(d), set()).add(d.marked)
        assert {frozenset(I for I, _ in o) for o in orbits} == {frozenset(f) for f in fibers.values()}


def _invariant(d):
    """Levi-class invariant for A/B/C read directly off the marking."""
    comps = components(d)
    special = [k for k in comps if d.rank in k and d.type_label in "BC"]
    rest = Counter(len(k) for k in comps if k not in special)
    return (len(special[0]) if special else 0, tuple(sorted(rest.items())))


@pytest.mark.parametrize("t", "ABC")
def test_normalize_fibers_match_length_invariant(t):
    for d in all_markings(t, 9):
        for e in (normalize(d),):
            assert _invariant(e) == _invariant(d)


@settings(max_examples=150)
@given(st.sampled_from("ABCD"), st.integers(4, 30), st.data())
def test_normalization_witness_is_a_legal_path(t, r, data):
    d = MarkedDiagram(t, r, data.draw(st.frozensets(st.integers(1, r))))
    cur = d
    for mv in normalization_witness(d):
        assert mv.source == cur
        assert mv in legal_moves(cur)
        cur = mv.target
    assert cur == normalize(d)


@settings(max_examples=150)
@given(st.sampled_from("ABCD"), st.integers(4, 40), st.data())
def test_normal_form_shape(t, r, data):
    d = normalize(MarkedDiagram(t, r, data.draw(st.frozensets(st.integers(1, r), min_size=1))))
    comps = components(d)
    assert max(d.marked) >= r - 1
    assert len(hat_I(d)) <= 2 * len(d.marked)
    chain = [k for k in comps if not ({r - 1, r} & set(k))] if t == "D" else comps
    for a, b in zip(chain, chain[1:]):
        assert min(b) - max(a) == 2


@pytest.mark.parametrize("t,lo", [("A", 1), ("B", 2), ("C", 2), ("D", 3)])
def test_hat_bound_exhaustive_to_rank_12(t, lo):
    for r in range(lo, 13):
        for d in all_markings(t, r):
            if d.marked:
                nf = normalize(d)
                assert len(hat_I(nf)) <= 2 * len(nf.marked)
