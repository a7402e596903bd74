import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from ietlang.construct import (
    ConstructionError,
    build_affine,
    coding_matches,
    decide_standard_symmetric,
    extend_language,
    ordering_from_graph,
    saturate,
    standard_iet_search,
)
from ietlang.iet import cylinder
from ietlang.language import (
    BiInfinite,
    EventuallyPeriodicWord,
    ExtensionGraph,
    IetCoding,
    build_language,
    connections,
    extension_graph,
    finite_language,
    order_condition,
)
from ietlang.words import OrderPair, all_pairs, alphabet_of, reverse

P = OrderPair.parse


def test_saturate_two_squares():
    g = extension_graph(finite_language(["11", "22"]), "", P("12|12"))
    s = saturate(g)
    assert s.edges == {("1", "1"), ("1", "2"), ("2", "2")}
    assert saturate(s).edges == s.edges
    assert s.crossing() is None


def test_saturate_keeps_complete_staircase():
    g = ExtensionGraph("", P("321|123"), ("3", "2", "1"), ("1", "2", "3"),
                       frozenset({("3", "1"), ("2", "1"), ("2", "2"), ("1", "2"), ("1", "3")}))
    assert saturate(g).edges == g.edges


def test_saturate_refuses_crossing_graph():
    v = finite_language(["3122", "1212"], closure_reversal=True)
    g = extension_graph(v, "12", P("321|123"))
    with pytest.raises(ConstructionError, match="crossing"):
        saturate(g)


def test_saturate_symmetric_self_partner():
    g = extension_graph(finite_language(["12", "21"]), "", P("21|12"))
    s, t = saturate(g, g)
    assert s.edges == {("2", "1"), ("2", "2"), ("1", "2")}
    assert s is t
    assert all((y, x) in s.edges for x, y in s.edges)
    assert s.crossing() is None


def test_saturate_with_partner_mirrors_edges():
    pair = P("321|123")
    F = finite_language(["3122"], closure_reversal=True)
    g, h = extension_graph(F, "12", pair), extension_graph(F, "21", pair)
    s, t = saturate(g, h)
    assert {(y, x) for x, y in s.edges - g.edges} <= t.edges
    assert s.crossing() is None and t.crossing() is None


def test_ordering_from_graph_example():
    s = saturate(extension_graph(finite_language(["11", "22"]), "", P("12|12")))
    order = ordering_from_graph(s)
    assert order.sequence == (("gamma", 1), ("beta", 1))
    assert order.zones == ((1,), ())


def test_ordering_rejects_non_staircase():
    diag = extension_graph(finite_language(["11", "22"]), "", P("12|12"))
    with pytest.raises(ConstructionError, match="not saturated"):
        ordering_from_graph(diag)


def test_extend_two_blocks():
    L = extend_language(["1122"], P("12|12"), 6)
    # the saturated language is made of the words 1^a 2^b
    for n in range(1, 7):
        assert L.factors(n) == {"1" * a + "2" * (n - a) for a in range(n + 1)}


def test_extend_restricts_to_used_letters():
    L = extend_language(["3311"], P("213|123"), 8)
    seq = BiInfinite([EventuallyPeriodicWord("3", "", "1"), EventuallyPeriodicWord("3", "2", "1")])
    ref = build_language(seq, 8)
    for n in range(1, 9):
        assert L.factors(n) <= ref.factors(n)
        assert L.factors(n) == {"3" * a + "1" * (n - a) for a in range(n + 1)}


def test_extend_errors():
    with pytest.raises(ConstructionError, match="order condition"):
        extend_language(["2132"], P("321|123"), 4)
    with pytest.raises(ConstructionError, match="not ordered"):
        extend_language(["14"], P("21|12"), 4)
    with pytest.raises(ConstructionError, match="symmetric pair"):
        extend_language(["12"], P("12|12"), 4, symmetric=True)


def test_symmetric_extension_is_closed_under_reversal():
    pair = P("321|123")
    L = extend_language(["1312"], pair, 9, symmetric=True)
    for n in range(10):
        assert {reverse(u) for u in L.factors(n)} == L.factors(n)
    assert connections(L, pair, 7) == []
    assert "1312" in L and "2131" in L


word_sets = st.lists(st.text(alphabet="123", min_size=1, max_size=5), min_size=1, max_size=2)


@settings(max_examples=60, deadline=None)
@given(word_sets, st.sampled_from(list(all_pairs("123"))))
def test_extension_contract(W, pair):
    assume(order_condition(finite_language(W), pair.restrict(alphabet_of(W))))
    N = max(2, max(map(len, W)))
    L = extend_language(W, pair, N + 2)
    sub = pair.restrict(alphabet_of(W))
    for n in range(1, N + 3):
        assert oracles.factors(W, n) <= L.factors(n)
    for n in range(L.depth):
        for u in L.factors(n):
            assert L.left_extensions(u) and L.right_extensions(u)
    assert connections(L, sub, N) == []


@settings(max_examples=40, deadline=None)
@given(word_sets, st.sampled_from(list(all_pairs("123"))))
def test_affine_coding_matches_extension(W, pair):
    assume(order_condition(finite_language(W), pair.restrict(alphabet_of(W))))
    N = max(2, max(map(len, W)))
    T = build_affine(W, pair)
    assert T.pair == pair.restrict(alphabet_of(W))
    assert coding_matches(T, extend_language(W, pair, N), N)
    assert all(not cylinder(T, w).empty for w in W)


def test_build_affine_examples():
    T = build_affine(["3311"], P("213|123"))
    assert str(T.pair) == "13|13"
    assert coding_matches(T, extend_language(["3311"], P("213|123"), 4), 4)
    T = build_affine(["1312"], P("321|123"))
    assert not cylinder(T, "1312").empty
    with pytest.raises(ConstructionError):
        build_affine(["2132"], P("321|123"))


def test_decide_examples():
    pair = P("321|123")
    assert decide_standard_symmetric(["1312"], pair)
    assert decide_standard_symmetric(["3122"], pair).describe() == "producible"
    assert decide_standard_symmetric(["1212"], pair)
    d = decide_standard_symmetric(["3122", "1212"], pair)
    assert not d
    assert d.describe() == "not producible: violated at bispecial '12': 2121 and 3122 cross"
    with pytest.raises(ConstructionError, match="symmetric pairs"):
        decide_standard_symmetric(["12"], P("12|12"))


def test_search_examples():
    T = standard_iet_search(["3322"], P("231|123"))
    assert T.lengths == {"1": F(1, 5), "2": F(2, 5), "3": F(2, 5)}
    assert not cylinder(T, "3322").empty
    assert standard_iet_search(["3311"], P("213|123")) is None
    assert standard_iet_search(["3122", "1212", "2213", "2121"], P("321|123")) is None
    T = standard_iet_search(["1312"], P("321|123"))
    assert T is not None and not cylinder(T, "1312").empty


def test_search_visits_small_denominators_first():
    T = standard_iet_search(["12"], P("21|12"))
    assert T.lengths == {"1": F(1, 2), "2": F(1, 2)}
    T = standard_iet_search(["11"], P("21|12"))
    assert T.lengths == {"1": F(2, 3), "2": F(1, 3)}


def test_search_with_connection_filter():
    pair = P("321|123")
    T = standard_iet_search(["1312"], pair, max_den=40, connection_depth=4)
    assert T is not None
    L = build_language(IetCoding(T), 4)
    assert connections(L, pair, 2) == []


def test_search_guards():
    with pytest.raises(ConstructionError, match="alphabets"):
        standard_iet_search(["1"], P("12345|12345"))
    with pytest.raises(ConstructionError, match="max_den"):
        standard_iet_search(["1"], P("21|12"), max_den=65)
    with pytest.raises(ConstructionError, match="not ordered"):
        standard_iet_search(["3"], P("21|12"))


def test_search_agrees_with_brute_force():
    pair = P("321|123")
    for w in ["1312", "3122", "213", "2222", "1313"]:
        T = standard_iet_search([w], pair, max_den=12)
        found = None
        for q in range(3, 13):
            for a in range(1, q):
                for b in range(1, q - a):
                    if math.gcd(a, b, q) != 1:
                        continue
                    lengths = [F(a, q), F(b, q), F(q - a - b, q)]
                    Tm, letter = oracles.standard_map("321", "123", lengths)
                    if any(oracles.itinerary(Tm, letter, F(k, q), len(w)) == w for k in range(q)):
                        found = lengths
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            assert T is None, w
        else:
            assert [T.lengths[x] for x in "123"] == found, w
