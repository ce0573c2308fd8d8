import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from charvar.errors import ParseError
from charvar.words import FreeWord, module_generator_words, parse_word, weight_vector, word_stats

letters = st.sampled_from([1, 2, -1, -2])
words = st.lists(letters, max_size=15).map(FreeWord.from_sequence)


def test_parse_and_print():
    w = parse_word("g1^2 g2^-1")
    assert w.letters == ((1, 2), (2, -1))
    assert str(w) == "g1^2 g2^-1"
    assert parse_word("").is_identity() and parse_word(" e ").is_identity()
    assert str(FreeWord.identity()) == "e"


def test_parse_reduces():
    assert parse_word("g1 g2 g2^-1 g1^-1").is_identity()
    assert parse_word("g1 g1 g1").letters == ((1, 3),)


@pytest.mark.parametrize("text,pos", [("g1 h2", 3), ("g3", 0), ("g1^0", 3)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_word(text)
    assert exc.value.position == pos


def test_rank_and_validation():
    assert parse_word("g3", n=3).letters == ((3, 1),)
    with pytest.raises(ValueError):
        FreeWord(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        parse_word("g1") * parse_word("g1", n=3)


def test_stats_and_weight():
    w = parse_word("g1^2 g2^-3 g1")
    assert word_stats(w) == (6, 3)
    assert weight_vector(w, 2).entries == (1, 1)


@given(words, words, words)
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(words, words, st.integers(1, 5))
def test_weight_is_a_homomorphism(a, b, m):
    assert (a * b).weight_vector(m) == a.weight_vector(m) + b.weight_vector(m)
    assert a.inverse().weight_vector(m) == -a.weight_vector(m)


@given(words)
def test_print_parse_roundtrip(w):
    assert parse_word(str(w)) == w


@given(words, st.integers(-3, 3))
def test_power(w, k):
    if k >= 0:
        expected = FreeWord.identity()
        for _ in range(k):
            expected = expected * w
    else:
        expected = FreeWord.identity()
        for _ in range(-k):
            expected = expected * w.inverse()
    assert w ** k == expected


def test_module_generator_words():
    words = module_generator_words(2, 3)
    assert [str(w) for w in words[:3]] == ["e", "g1", "g2"]
    assert all(w.length <= 2 and 2 * w.inverse_count <= w.length for w in words)
    # brute force: all reduced words of length <= 2 in F_2 with few inverses
    expected = {w for w in (parse_word(" ".join(t)) for k in range(3)
                            for t in itertools.product(["g1", "g2", "g1^-1", "g2^-1"], repeat=k))
                if 2 * w.inverse_count <= w.length}
    assert set(words) == expected and len(words) == len(expected)
    with pytest.raises(ValueError):
        module_generator_words(2, 0)
