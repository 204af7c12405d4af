import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gentorsion.errors import MissingGeneratorError
from gentorsion.words import (
    Letter,
    Word,
    commutator,
    conjugate,
    cyclic_reduction,
    find_conjugator,
    invert,
    reduce,
    substitute,
)

from conftest import naive_reduce

W = Word.parse

letters = st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])).map(lambda t: Letter(*t))
raw_sequences = st.lists(letters, max_size=64)
words = raw_sequences.map(Word)


def test_reduce_examples():
    assert reduce([("a", 1), ("b", 1), ("b", -1), ("a", -1)]) == Word()
    assert reduce([("a", 1), ("a", 1), ("b", -1)]).to_text() == "aaB"
    assert reduce([("b", 1), ("a", 1), ("a", -1), ("a", -1)]).to_text() == "bA"


def test_invert_examples():
    assert invert(W("ab")) == W("BA")
    assert invert(Word()) == Word()
    assert invert(W("aBa")) == W("AbA")


def test_conjugate_examples():
    assert conjugate(W("a"), W("b")) == W("Bab")
    assert conjugate(W("a"), W("aaa")) == W("a")
    # by hand: (b̄ā)⁻¹ = ab, so ab · a · b̄ā
    assert conjugate(W("a"), W("BA")) == W("abaBA")


def test_commutator_examples():
    assert commutator(W("a"), W("b")) == W("ABab")
    assert commutator(W("a"), W("A")) == Word()
    assert commutator(W("ab"), W("ab")) == Word()


def test_substitute_examples():
    assert substitute(W("ab"), {"a": W("a"), "b": W("b")}) == W("ab")
    assert substitute(W("gg"), {"g": W("ab")}) == W("abab")
    assert substitute(commutator(W("a"), W("b")), {"a": W("b"), "b": W("a")}) == W(naive_reduce("BAba"))


def test_substitute_missing_generator():
    with pytest.raises(MissingGeneratorError):
        substitute(W("ab"), {"a": W("b")})


def test_letter_sign_validated():
    with pytest.raises(ValueError):
        Word([("a", 2)])


def test_parse_rejects_junk():
    with pytest.raises(ValueError):
        W("a1b")
    assert W("b A b") == W("bAb")


def test_render_bar_notation():
    assert str(W("aB")) == "ab̄"
    assert str(Word()) == "ε"


@settings(max_examples=1000)
@given(raw_sequences, st.randoms(use_true_random=False))
def test_reduction_confluence(seq, rnd):
    # cancel adjacent inverse pairs in a random order until none remain
    work = list(seq)
    while True:
        spots = [i for i in range(len(work) - 1) if work[i].gen == work[i + 1].gen and work[i].sign == -work[i + 1].sign]
        if not spots:
            break
        i = rnd.choice(spots)
        del work[i : i + 2]
    assert Word(seq).letters == tuple(work)
    assert len(Word(seq)) <= len(seq)
    assert reduce(Word(seq)) == Word(seq)


@settings(max_examples=1000)
@given(words, words, words)
def test_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert invert(invert(u)) == u
    assert u * invert(u) == Word() == invert(u) * u
    assert u * Word() == u


@settings(max_examples=300)
@given(words, words, words)
def test_conjugation_is_an_action(g, x, y):
    assert conjugate(g, Word()) == g
    assert conjugate(conjugate(g, x), y) == conjugate(g, x * y)


@settings(max_examples=1000)
@given(words, words)
def test_commutator_product_rule(u, v):
    a = W("a")
    assert commutator(a, u * v) == commutator(a, v) * conjugate(commutator(a, u), v)


@settings(max_examples=300)
@given(words, words)
def test_find_conjugator_recovers_conjugates(u, x):
    v = conjugate(u, x)
    y = find_conjugator(u, v)
    assert y is not None
    assert conjugate(u, y) == v


def test_find_conjugator_rejects_non_conjugates():
    assert find_conjugator(W("ab"), W("aab")) is None
    assert find_conjugator(W("ab"), W("ba")) is not None
    assert find_conjugator(W("ab"), W("AB")) is None


def test_cyclic_reduction():
    p, core = cyclic_reduction(W("abcBA"))
    assert p == W("ab") and core == W("c")


def test_random_against_string_oracle():
    rnd = random.Random(7)
    for _ in range(1000):
        text = "".join(rnd.choice("aAbB") for _ in range(rnd.randint(0, 40)))
        assert W(text).to_text() == (naive_reduce(text) or "1")
