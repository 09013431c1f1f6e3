import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htcas.core import (
    Element,
    GradedMap,
    GradedSpace,
    Word,
    canonical_word,
    coords,
    from_coords,
    koszul_sign,
    suspension_sign,
    sym_expand,
    symmetrize,
    tensor_apply,
    tensor_map,
    unshuffle,
    word_basis,
)


def test_koszul_sign_examples():
    assert koszul_sign([2, 1], [3, 3]) == 1
    assert koszul_sign([1, 2, 3], [5, 2, 7]) == 1
    assert koszul_sign([2, 1], [2, 3]) == -1


def test_koszul_sign_input_errors():
    with pytest.raises(ValueError):
        koszul_sign([1, 2], [3])
    with pytest.raises(ValueError):
        koszul_sign([1, 1], [2, 2])


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=4),
    data=st.data(),
)
def test_koszul_sign_is_multiplicative(n, data):
    degs = data.draw(st.lists(st.integers(0, 7), min_size=n, max_size=n))
    perms = list(itertools.permutations(range(1, n + 1)))
    sigma = list(data.draw(st.sampled_from(perms)))
    tau = list(data.draw(st.sampled_from(perms)))
    # composite rearrangement: first tau, then sigma acting on the result
    comp = [tau[s - 1] for s in sigma]
    permuted = [degs[t - 1] for t in tau]
    assert koszul_sign(comp, degs) == koszul_sign(tau, degs) * koszul_sign(
        sigma, permuted
    )


SP = GradedSpace.of([("g", 3), ("h", 3), ("r", 5), ("s", 6)])


def test_canonical_wedge_order_and_sign():
    # r (deg 5) before s (deg 6); swapping odd/even flips graded signature
    w, s = canonical_word(SP, "w", ("s", "r"))
    assert w == Word.wedge("r", "s") and s == -1
    # two odds swap with graded signature +1
    w, s = canonical_word(SP, "w", ("h", "g"))
    assert w == Word.wedge("g", "h") and s == 1


def test_wedge_and_monomial_kill_rules():
    # wedge: repeated even-degree factor dies, repeated odd survives
    assert canonical_word(SP, "w", ("s", "s")) == (None, 0)
    assert canonical_word(SP, "w", ("g", "g"))[0] == Word.wedge("g", "g")
    # monomial: repeated odd dies, repeated even survives
    assert canonical_word(SP, "m", ("g", "g")) == (None, 0)
    assert canonical_word(SP, "m", ("s", "s"))[0] == Word.mono("s", "s")


def test_canonicalization_idempotent():
    rng = random.Random(7)
    for _ in range(50):
        fs = tuple(rng.choice(SP.names) for _ in range(rng.randint(1, 4)))
        for kind in ("w", "m"):
            w, s = canonical_word(SP, kind, fs)
            if w is None:
                continue
            w2, s2 = canonical_word(SP, kind, w.factors)
            assert w2 == w and s2 == 1


def test_element_homogeneity_enforced():
    with pytest.raises(ValueError):
        Element(SP, {Word.tensor("g"): Fraction(1), Word.tensor("r"): Fraction(1)})


def test_element_arithmetic_round_trip():
    e = Element.make(SP, [(1, "t", ("g", "r")), (-2, "t", ("r", "g"))])
    f = Element.make(SP, [(Fraction(1, 2), "t", ("g", "r"))])
    g = e + f - f
    assert g == e
    assert (-1) * e + e == Element.zero(SP)
    words = word_basis(SP, "t", 2)
    assert from_coords(SP, words, coords(e, words)) == e


def test_tensor_map_examples():
    # delta: s -> r, degree -1
    delta = GradedMap(SP, SP, -1, {Word.tensor("s"): Element.gen(SP, "r")})
    ident = GradedMap.identity(SP)
    g_s = Element.make(SP, [(1, "t", ("g", "s"))])
    s_g = Element.make(SP, [(1, "t", ("s", "g"))])
    # (id (x) delta)(g (x) s) = -(g (x) r)
    out = tensor_apply([ident, delta], [1, 1], g_s)
    assert out == Element.make(SP, [(-1, "t", ("g", "r"))])
    # (id (x) id) is the identity
    assert tensor_apply([ident, ident], [1, 1], g_s) == g_s
    # (delta (x) id)(s (x) g) = r (x) g, no sign
    out = tensor_apply([delta, ident], [1, 1], s_g)
    assert out == Element.make(SP, [(1, "t", ("r", "g"))])


def test_tensor_map_materialized_matches_apply():
    delta = GradedMap(SP, SP, -1, {Word.tensor("s"): Element.gen(SP, "r")})
    ident = GradedMap.identity(SP)
    tm = tensor_map([ident, delta])
    for w in word_basis(SP, "t", 2):
        el = Element(SP, {w: Fraction(1)})
        assert tm.apply(el) == tensor_apply([ident, delta], [1, 1], el)


def test_tensor_map_respects_composition_with_koszul_sign():
    rng = random.Random(3)
    names = SP.names

    def random_map(deg):
        images = {}
        for n in names:
            targets = [m for m in names if SP.degree(m) == SP.degree(n) + deg]
            if targets and rng.random() < 0.8:
                images[Word.tensor(n)] = Element.make(
                    SP, [(rng.randint(-2, 2), "t", (rng.choice(targets),))]
                )
        return GradedMap(SP, SP, deg, images)

    for _ in range(20):
        df, dg, dfp, dgp = (rng.choice([-1, 0, 1]) for _ in range(4))
        f, g, fp, gp = random_map(df), random_map(dg), random_map(dfp), random_map(dgp)
        sign = -1 if (dg % 2 and dfp % 2) else 1
        for w in word_basis(SP, "t", 2):
            el = Element(SP, {w: Fraction(1)})
            lhs = tensor_apply([f, g], [1, 1], tensor_apply([fp, gp], [1, 1], el))
            ff = GradedMap(SP, SP, df + dfp, {u: f.apply(e) for u, e in fp.images.items()})
            gg = GradedMap(SP, SP, dg + dgp, {u: g.apply(e) for u, e in gp.images.items()})
            rhs = sign * tensor_apply([ff, gg], [1, 1], el)
            assert lhs == rhs


def test_unshuffle_small_cases():
    # n=1: only the trivial splits
    w = Word.tensor("g")
    out = unshuffle(SP, w)
    assert out == {
        (Word.tensor("g"), Word.tensor()): 1,
        (Word.tensor(), Word.tensor("g")): 1,
    }
    assert unshuffle(SP, w, proper=True) == {}
    with pytest.raises(ValueError):
        unshuffle(SP, Word.tensor())


def test_unshuffle_n2_brute_force():
    # even-degree letters: proper part is x(x)y + y(x)x off-diagonal pattern
    sp = GradedSpace.of([("a", 2), ("b", 4)])
    out = unshuffle(sp, Word.tensor("a", "b"))
    assert out[(Word.tensor("a", "b"), Word.tensor())] == 1
    assert out[(Word.tensor(), Word.tensor("a", "b"))] == 1
    assert out[(Word.tensor("a"), Word.tensor("b"))] == 1
    assert out[(Word.tensor("b"), Word.tensor("a"))] == -1
    assert len(out) == 4
    # both odd: the swap picks up signature times Koszul = +1
    out = unshuffle(SP, Word.tensor("g", "h"), proper=True)
    assert out == {
        (Word.tensor("g"), Word.tensor("h")): 1,
        (Word.tensor("h"), Word.tensor("g")): 1,
    }


def test_symmetrize_counts_and_signs():
    # k=1
    assert symmetrize(SP, Word.wedge("g")) == Element.gen(SP, "g")
    # k=2 both even: transposing two even symbols has graded signature -1
    sp = GradedSpace.of([("a", 2), ("b", 4)])
    out = symmetrize(sp, Word.wedge("a", "b"))
    assert out == Element.make(sp, [(1, "t", ("a", "b")), (-1, "t", ("b", "a"))])
    # k=2 both odd: graded signature of the swap is +1
    out = symmetrize(SP, Word.wedge("g", "h"))
    assert out == Element.make(SP, [(1, "t", ("g", "h")), (1, "t", ("h", "g"))])


def test_symmetrize_well_defined_on_wedge_relations():
    # symmetrize(v2 ^ v1) must match the wedge sorting sign
    for names in (("r", "s"), ("g", "h"), ("g", "s")):
        a, b = names
        w, s = canonical_word(SP, "w", (b, a))
        lhs = symmetrize(SP, Word("w", (b, a)))
        rhs = s * symmetrize(SP, w)
        assert lhs == rhs


def test_symmetrize_term_count_distinct_factors():
    out = symmetrize(SP, Word.wedge("g", "r", "s"))
    assert len(out.terms) == 6
    out = sym_expand(SP, Word.mono("r", "s"))
    assert len(out.terms) == 2


def test_suspension_sign():
    assert suspension_sign([3]) == 1
    assert suspension_sign([3, 4]) == -1  # first factor hops one symbol
    assert suspension_sign([2, 5]) == 1
