from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.combinatorics.exact import QContext
from src.combinatorics.partitions import enumerate_lambda_n, interlacing_tuples
from src.combinatorics.patterns import GtPattern, classic_insert_pattern, enumerate_patterns, zero_pattern
from src.combinatorics.qinsert import (
    InterlacedPair,
    first_letter_pattern,
    insert_letter,
    l_prob,
    phi_word,
    phi_word_sum,
    r_prob,
    sample_insert,
    words,
)
from src.combinatorics.tableaux import Letter, alphabet

HALF = QContext(Fraction(1, 2))
ZERO = QContext(Fraction(0))


def test_interlaced_pair_validation():
    assert InterlacedPair((3, 1), (3, 2)).mode == "same"
    assert InterlacedPair((2,), (3, 1)).mode == "grow"
    with pytest.raises(ValueError):
        InterlacedPair((3, 1), (2, 2))
    with pytest.raises(ValueError):
        InterlacedPair((1,), (3, 1, 1))


def test_r_prob():
    pair = InterlacedPair((3, 1), (3, 2))
    assert r_prob(HALF, pair, 2) == Fraction(1, 3)
    assert r_prob(HALF, pair, 1) == 1
    assert r_prob(HALF, InterlacedPair((2, 2), (3, 2)), 2) == 1
    assert r_prob(HALF, InterlacedPair((1,), (3,)), 1) == Fraction(1, 4)


def test_l_prob():
    assert l_prob(HALF, InterlacedPair((3, 1), (3, 1)), 1) == 0
    assert l_prob(HALF, InterlacedPair((3, 1), (3, 2)), 1) == Fraction(1, 3)
    assert l_prob(HALF, InterlacedPair((2, 2), (2, 2)), 1) == 1


def decreasing_levels(length, top):
    return [level for level in product(range(top + 1), repeat=length) if list(level) == sorted(level, reverse=True)]


def interlaced_pairs(max_length=3, top=5):
    for length in range(1, max_length + 1):
        for x in decreasing_levels(length, top):
            for y_length in (length, length + 1):
                for y in decreasing_levels(y_length, top):
                    if interlacing_tuples(x, y):
                        yield InterlacedPair(x, y)


@pytest.mark.parametrize("q", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)])
def test_jump_probabilities_lie_in_the_unit_interval(q):
    ctx = QContext(q)
    evaluated = 0
    for pair in interlaced_pairs():
        for i in range(1, len(pair.x) + 1):
            for prob in (r_prob(ctx, pair, i), l_prob(ctx, pair, i)):
                assert 0 <= prob <= 1, (pair, i, prob)
                evaluated += 1
    assert evaluated > 1000


def test_index_out_of_range():
    with pytest.raises(ValueError):
        r_prob(HALF, InterlacedPair((3, 1), (3, 2)), 3)
    with pytest.raises(ValueError):
        l_prob(HALF, InterlacedPair((3, 1), (3, 2)), 0)


def test_insert_into_one_level_pair():
    z = GtPattern(1, ((0,), (1,)))
    law = insert_letter(HALF, z, Letter(1)).mapping
    assert law == {
        GtPattern(1, ((1,), (2,))): Fraction(1, 2),
        GtPattern(1, ((0,), (0,))): Fraction(1, 2),
    }


def test_insert_rejects_large_letter():
    with pytest.raises(ValueError):
        insert_letter(HALF, zero_pattern(1), Letter(2))


@pytest.mark.parametrize("letter", alphabet(3))
def test_first_letter_is_deterministic(letter):
    law = insert_letter(HALF, zero_pattern(3), letter)
    assert law.mapping == {first_letter_pattern(3, letter): Fraction(1)}


@pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(1, 3), Fraction(4, 5)])
def test_insertion_laws_are_probability_distributions(q):
    ctx = QContext(q)
    for lam in enumerate_lambda_n(2, 2):
        for z in enumerate_patterns(lam, 2):
            for letter in alphabet(2):
                law = insert_letter(ctx, z, letter)
                assert law.total() == 1
                assert all(p > 0 for _, p in law.outcomes)
                for outcome, _ in law.outcomes:
                    assert abs(sum(outcome.shape) - sum(lam)) == 1


def test_q_zero_reduces_to_classic_cascade():
    for lam in enumerate_lambda_n(2, 2):
        for z in enumerate_patterns(lam, 2):
            for letter in alphabet(2):
                assert insert_letter(ZERO, z, letter).mapping == {classic_insert_pattern(z, letter): Fraction(1)}


def test_sample_insert_walks_the_cumulative_law():
    z = GtPattern(1, ((0,), (1,)))
    first, second = [pattern for pattern, _ in insert_letter(HALF, z, Letter(1)).outcomes]
    assert sample_insert(HALF, z, Letter(1), Fraction(0)) == first
    assert sample_insert(HALF, z, Letter(1), Fraction(1, 2)) == second
    with pytest.raises(ValueError):
        sample_insert(HALF, z, Letter(1), Fraction(1))


def test_phi_word_weights_sum_to_one():
    table = phi_word(HALF, [Letter(1), Letter(1)], 1)
    assert table.total() == 1
    assert all(f.final == z.shape for (z, f) in table.entries)


def test_words_enumerates_every_word():
    assert len(list(words(2, 3))) == 64


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(alphabet(2)), max_size=4), st.sampled_from([Fraction(1, 2), Fraction(2, 3)]))
def test_phi_word_is_a_law_for_every_word(word, q):
    assert phi_word(QContext(q), word, 2).total() == 1


def test_phi_word_sum_with_unit_weights_counts_words():
    table = phi_word_sum(HALF, 1, 3, lambda letter: Fraction(1))
    assert table.total() == 8
