from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyergeo.graph import Letter, parse_dyer_graph
from dyergeo.words import DyerGroup, parse_word

from oracles import ORACLE_FIXTURES, W, all_words, group, model


def cyclic(k):
    return DyerGroup(parse_dyer_graph(f"vertex x {k}"))


def test_letter_inverse():
    assert cyclic(5).letter_inverse(Letter(0, 2)) == Letter(0, 3)
    assert cyclic(2).letter_inverse(Letter(0, 1)) == Letter(0, 1)
    assert group("Zline").letter_inverse(Letter(0, 1)) == Letter(0, -1)


def test_local_reduce_examples():
    Z = group("Zline")
    assert Z.local_reduce(W(Z, "x^1 x^-1")) == ()
    C3 = cyclic(3)
    assert C3.local_reduce(W(C3, "x x")) == W(C3, "x^2")
    assert C3.local_reduce(W(C3, "x^1 x^2")) == ()
    S3 = group("S3")
    assert S3.local_reduce(W(S3, "u u")) == ()


def test_local_reduce_cascades():
    G = group("FIG1")
    assert G.local_reduce(W(G, "a b b a^-1 c")) == W(G, "c")


def test_length_preserving_moves_examples():
    Z2 = group("Z2")
    assert Z2.length_preserving_moves(W(Z2, "b a")) == {W(Z2, "a b")}
    S3 = group("S3")
    assert S3.length_preserving_moves(W(S3, "u v u")) == {W(S3, "v u v")}
    assert S3.length_preserving_moves(W(S3, "u v")) == set()


def test_reduce_examples():
    S3 = group("S3")
    r = S3.reduce(W(S3, "u v u v"))
    assert len(r) == 2 and S3.equal(r, W(S3, "v u"))
    assert cyclic(3).reduce(W(cyclic(3), "x^1 x^2")) == ()
    Z2 = group("Z2")
    assert Z2.reduce(W(Z2, "a^1 b a^-1")) == W(Z2, "b")


def test_normal_form_examples():
    S3 = group("S3")
    assert S3.normal_form(W(S3, "v u v")) == W(S3, "u v u")
    assert S3.normal_form(()) == ()
    Z2 = group("Z2")
    assert Z2.normal_form(W(Z2, "b a^1")) == W(Z2, "a^1 b")


def test_group_operation_examples():
    S3 = group("S3")
    assert S3.equal(W(S3, "u v u"), W(S3, "v u v"))
    C3 = cyclic(3)
    assert C3.multiply(C3.normal_form(W(C3, "x^1")), C3.normal_form(W(C3, "x^2"))) == ()
    F = group("FIG1")
    assert F.invert(F.normal_form(W(F, "a^1 b"))) == F.normal_form(W(F, "b a^-1"))


def test_relators_are_trivial():
    for name in ("S3", "D4", "GP34", "Z2", "FIG1", "C5cyc"):
        G = group(name)
        rels = G.relators()
        assert rels
        for r in rels:
            assert G.normal_form(r) == (), (name, G.format_word(r))


def test_parse_word():
    G = group("GP34")
    assert parse_word(G.graph, "a^4 b^-1") == G.from_letters([Letter(0, 1), Letter(1, 3)])
    Z = group("Zline")
    assert Z.parse_word("x^-3") == (1, 1, 1)
    with pytest.raises(ValueError):
        G.parse_word("a^3")
    with pytest.raises(ValueError):
        G.parse_word("q")
    with pytest.raises(ValueError):
        G.parse_word("a^^2")


def test_format_word_roundtrip():
    G = group("FIG1")
    w = W(G, "a^-1 b c a^1")
    assert G.format_word(w) == "a^-1 b^1 c^1 a^1"
    assert G.parse_word(G.format_word(w)) == w


@pytest.mark.parametrize("name", ORACLE_FIXTURES)
def test_normal_form_is_shortlex_least_geodesic(name):
    """Brute force: the least word of minimal length with the same value."""
    G, mod = group(name), model(name)
    best = {}
    for w in all_words(len(G.alphabet), 4):
        best.setdefault(mod.evaluate(w), w)  # all_words is shortlex ordered
    for w in all_words(len(G.alphabet), 4):
        x = mod.evaluate(w)
        nf = G.normal_form(w)
        assert len(nf) == mod.length(x)
        if len(best[x]) == len(nf):
            assert nf == best[x]


# -- properties -------------------------------------------------------------

NAMES = ("S3", "D4", "GP34", "Z2", "FIG1", "C5cyc", "Zline")


@st.composite
def group_and_words(draw, count=1, max_size=10):
    name = draw(st.sampled_from(NAMES))
    n = len(group(name).alphabet)
    ws = [tuple(draw(st.lists(st.integers(0, n - 1), max_size=max_size))) for _ in range(count)]
    return (name, *ws)


@settings(max_examples=150, deadline=None)
@given(group_and_words())
def test_normal_form_properties(args):
    name, w = args
    G = group(name)
    nf = G.normal_form(w)
    assert G.normal_form(nf) == nf
    assert G.is_geodesic(nf)
    assert len(nf) <= len(w)
    assert G.normal_form(tuple(w) + G.invert_word(w)) == ()
    assert G.is_locally_reduced(nf)
    # no word in the closure of the normal form is locally reducible
    for x in G.closure(nf):
        assert G.is_locally_reduced(x)
        assert nf <= x


@settings(max_examples=100, deadline=None)
@given(group_and_words(count=3, max_size=6))
def test_multiplication_is_associative(args):
    name, x, y, z = args
    G = group(name)
    x, y, z = G.normal_form(x), G.normal_form(y), G.normal_form(z)
    assert G.multiply(G.multiply(x, y), z) == G.multiply(x, G.multiply(y, z))


@settings(max_examples=100, deadline=None)
@given(group_and_words(count=2, max_size=6))
def test_distance_is_a_metric(args):
    name, x, y = args
    G = group(name)
    x, y = G.normal_form(x), G.normal_form(y)
    d = G.distance(x, y)
    assert d == G.distance(y, x)
    assert (d == 0) == (x == y)
    assert d <= len(x) + len(y)


@settings(max_examples=100, deadline=None)
@given(group_and_words(max_size=8), st.data())
def test_relator_insertion_preserves_element(args, data):
    name, w = args
    G = group(name)
    trivial = G.relators() + [(a, G.inverse[a]) for a in range(len(G.alphabet))]
    rel = data.draw(st.sampled_from(trivial))
    i = data.draw(st.integers(0, len(w)))
    assert G.equal(w, tuple(w[:i]) + rel + tuple(w[i:]))


def test_length_preserving_moves_preserve_element():
    for name in ("S3", "D4", "Z2", "FIG1"):
        G = group(name)
        for w in all_words(len(G.alphabet), 5):
            for y in G.length_preserving_moves(w):
                assert G.equal(w, y)
