from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    dot,
    euclidean_cartan,
    euclidean_roots,
    root_count_formula,
    to_euclidean,
)
from unicover.root_system import (
    Coweight,
    RootSystemError,
    apply_weyl,
    build_root_system,
    cartan_matrix,
    cartan_pairing,
    coweight_pairing,
    is_root,
    lattice_rank,
    longest_element,
    reflect,
    reflect_in_root,
    subsystem,
    to_json,
    unit,
    weyl_matrix,
)

SMALL_TYPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 5), ("B", 2), ("B", 3), ("B", 5), ("C", 2), ("C", 3), ("C", 5),
    ("D", 3), ("D", 4), ("D", 6), ("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8),
]


def simple(sys, i):
    return unit(sys.rank, i)


@pytest.mark.parametrize("t,r", SMALL_TYPES)
def test_cartan_matches_euclidean_realization(t, r):
    assert [list(row) for row in cartan_matrix(t, r)] == euclidean_cartan(t, r)


@pytest.mark.parametrize("t,r", SMALL_TYPES)
def test_roots_match_euclidean_closure(t, r):
    sys = build_root_system(t, r)
    euclid = euclidean_roots(t, r)
    assert len(sys.roots) == len(euclid) == root_count_formula(t, r)
    assert {to_euclidean(t, r, b) for b in sys.roots} == euclid


@pytest.mark.parametrize("t", "ABCD")
@pytest.mark.parametrize("r", [8, 17, 24, 40])
def test_classical_root_counts_to_rank_40(t, r):
    assert len(build_root_system(t, r).roots) == root_count_formula(t, r)


def test_build_examples():
    a1 = build_root_system("A", 1)
    assert len(a1.roots) == 2 and a1.dimension == 3
    c3 = build_root_system("C", 3)
    assert len(c3.roots) == 18 and c3.dimension == 21
    assert len(build_root_system("D", 4).roots) == 24


def test_roots_are_sorted_lexicographically():
    sys = build_root_system("B", 3)
    assert list(sys.roots) == sorted(sys.roots)
    assert to_json(sys.roots)[0] == list(sys.roots[0])


@pytest.mark.parametrize("t,r", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 3)])
def test_invalid_types_rejected(t, r):
    with pytest.raises(RootSystemError):
        build_root_system(t, r)


def test_cartan_pairing_examples():
    a2 = build_root_system("A", 2)
    assert cartan_pairing(a2, simple(a2, 1), 1) == 2
    assert cartan_pairing(a2, (1, 1), 1) == 1
    c3 = build_root_system("C", 3)
    assert cartan_pairing(c3, simple(c3, 3), 2) == -2
    with pytest.raises(IndexError):
        cartan_pairing(a2, (1, 0), 3)


def test_is_root_examples():
    a3 = build_root_system("A", 3)
    assert is_root(a3, (1, 1, 0))
    assert not is_root(a3, (1, 0, 1))
    assert not is_root(a3, (0, 2, 0))


def test_apply_weyl_examples():
    a2 = build_root_system("A", 2)
    assert apply_weyl(a2, [1], simple(a2, 1)) == (-1, 0)
    a3 = build_root_system("A", 3)
    w0 = longest_element(a3)
    assert apply_weyl(a3, w0, simple(a3, 1)) == (0, 0, -1)
    assert apply_weyl(a3, w0, (1, 1, 1)) == (-1, -1, -1)


def test_words_apply_left_to_right():
    a2 = build_root_system("A", 2)
    # s_1 first: alpha_1 -> -alpha_1, then s_2: -alpha_1 -> -(alpha_1 + alpha_2)
    assert apply_weyl(a2, [1, 2], simple(a2, 1)) == (-1, -1)
    assert apply_weyl(a2, [2, 1], simple(a2, 1)) == (0, 1)


def test_subsystem_examples():
    a3 = build_root_system("A", 3)
    assert len(subsystem(a3, [simple(a3, 1), simple(a3, 3)])) == 4
    c3 = build_root_system("C", 3)
    assert len(subsystem(c3, [simple(c3, 1), simple(c3, 2)])) == 6
    a4 = build_root_system("A", 4)
    assert len(subsystem(a4, [simple(a4, 2), simple(a4, 3)])) == 6


def test_longest_element_examples():
    a2 = build_root_system("A", 2)
    assert longest_element(a2, {1}) == (1,)
    w0 = longest_element(a2)
    assert apply_weyl(a2, w0, simple(a2, 1)) == (0, -1)
    assert apply_weyl(a2, w0, simple(a2, 2)) == (-1, 0)
    assert longest_element(a2, set()) == ()
    a3 = build_root_system("A", 3)
    w0 = longest_element(a3)
    for g in [(0, 1, 0), (1, 1, 1)]:
        assert apply_weyl(a3, w0, g) == tuple(-x for x in g)


@pytest.mark.parametrize("t,r", SMALL_TYPES)
def test_longest_element_length_and_negation(t, r):
    sys = build_root_system(t, r)
    w0 = longest_element(sys)
    assert len(w0) == len(sys.positive_roots)
    images = {apply_weyl(sys, w0, b) for b in sys.positive_roots}
    assert images == {tuple(-x for x in b) for b in sys.positive_roots}


def test_lattice_rank_examples():
    assert lattice_rank([Coweight.coroot(2, 1)]) == 1
    assert lattice_rank([Coweight.coroot(2, 1), Coweight.coroot(2, 1) + Coweight.coroot(2, 2)]) == 2
    assert lattice_rank([(0, 1, 0), (1, 1, 1)]) == 2
    assert lattice_rank([]) == 0


def test_coweight_reflection_uses_pairing():
    c3 = build_root_system("C", 3)
    lam = Coweight((Fraction(1), Fraction(0), Fraction(1, 2)))
    for i in range(1, 4):
        img = reflect(c3, lam, i)
        p = coweight_pairing(c3, simple(c3, i), lam)
        expected = list(lam.coords)
        expected[i - 1] -= p
        assert img == Coweight(tuple(expected))
        assert reflect(c3, img, i) == lam


def test_weyl_matrix_matches_apply():
    sys = build_root_system("B", 4)
    word = longest_element(sys, {2, 3, 4})
    m = weyl_matrix(sys, word)
    for b in sys.roots:
        img = tuple(sum(m[i][k] * b[k] for k in range(4)) for i in range(4))
        assert img == apply_weyl(sys, word, b)


# -- properties ----------------------------------------------------------------------

types = st.sampled_from(SMALL_TYPES)


@st.composite
def system_and_root(draw):
    t, r = draw(types)
    sys = build_root_system(t, r)
    beta = draw(st.sampled_from(sys.roots))
    return sys, beta


@given(system_and_root(), st.data())
def test_reflection_is_involution(sb, data):
    sys, beta = sb
    i = data.draw(st.integers(1, sys.rank))
    assert reflect(sys, reflect(sys, beta, i), i) == beta


@given(system_and_root(), st.data())
def test_reflections_permute_roots(sb, data):
    sys, beta = sb
    i = data.draw(st.integers(1, sys.rank))
    assert reflect(sys, beta, i) in sys.root_set


@given(system_and_root())
def test_negation_closure_and_sign(sb):
    sys, beta = sb
    assert tuple(-x for x in beta) in sys.root_set
    assert all(x >= 0 for x in beta) or all(x <= 0 for x in beta)


@given(system_and_root(), st.data())
def test_pairing_integral_and_bounded(sb, data):
    sys, beta = sb
    gamma = data.draw(st.sampled_from(sys.roots))
    p = 2 * dot(to_euclidean(sys.type_label, sys.rank, gamma), to_euclidean(sys.type_label, sys.rank, beta))
    p /= dot(to_euclidean(sys.type_label, sys.rank, beta), to_euclidean(sys.type_label, sys.rank, beta))
    # pairing against the coroot of a simple root agrees with the Euclidean formula
    i = data.draw(st.integers(1, sys.rank))
    e_i = to_euclidean(sys.type_label, sys.rank, unit(sys.rank, i))
    e_g = to_euclidean(sys.type_label, sys.rank, gamma)
    assert cartan_pairing(sys, gamma, i) == 2 * dot(e_g, e_i) / dot(e_i, e_i)
    assert cartan_pairing(sys, gamma, i) in {0, 1, -1, 2, -2, 3, -3}
    assert p.denominator == 1 and abs(p) <= 3


@given(system_and_root(), st.data())
def test_cartan_pairing_is_linear(sb, data):
    sys, beta = sb
    gamma = data.draw(st.sampled_from(sys.roots))
    i = data.draw(st.integers(1, sys.rank))
    total = tuple(x + y for x, y in zip(beta, gamma))
    assert cartan_pairing(sys, total, i) == cartan_pairing(sys, beta, i) + cartan_pairing(sys, gamma, i)


@given(system_and_root(), st.data())
def test_word_then_reverse_is_identity(sb, data):
    sys, beta = sb
    word = data.draw(st.lists(st.integers(1, sys.rank), max_size=12))
    assert apply_weyl(sys, list(reversed(word)), apply_weyl(sys, word, beta)) == beta


@settings(max_examples=40)
@given(system_and_root(), st.data())
def test_subsystem_is_reflection_stable(sb, data):
    sys, beta = sb
    gens = data.draw(st.lists(st.sampled_from(sys.roots), min_size=1, max_size=3))
    sub = subsystem(sys, gens)
    assert set(gens) <= sub
    for a in sub:
        for b in sub:
            assert reflect_in_root(sys, b, a) in sub
