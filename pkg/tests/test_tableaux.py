from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.combinatorics.partitions import EMPTY, Partition
from src.combinatorics.tableaux import (
    BAR,
    Letter,
    OscillatingTableau,
    PuncturedTableau,
    SymplecticTableau,
    alphabet,
    berele_insert,
    berele_word,
    enumerate_oscillating,
    enumerate_tableaux,
    jeu_de_taquin,
    letter_weight,
    parse_letter,
    parse_word,
    tableau_weight,
    validate,
    word_weight,
)

P = Partition.of


def tableau(n, *rows):
    return SymplecticTableau(n, tuple(tuple(parse_word([row], n)) for row in rows))


def punctured(n, *rows):
    cells = tuple(tuple(None if token == "_" else parse_letter(token, n) for token in row.split()) for row in rows)
    hole = next((i, j) for i, row in enumerate(cells) for j, cell in enumerate(row) if cell is None)
    return PuncturedTableau(n, cells, hole)


def test_alphabet_order():
    assert alphabet(2) == [Letter(1), Letter(1, True), Letter(2), Letter(2, True)]
    assert [letter.order for letter in alphabet(2)] == [1, 2, 3, 4]
    assert Letter.from_order(4) == Letter(2, True)


@pytest.mark.parametrize("token, expected", [("2", Letter(2)), ("2'", Letter(2, True)), ("2" + BAR, Letter(2, True))])
def test_parse_letter(token, expected):
    assert parse_letter(token, 2) == expected


@pytest.mark.parametrize("token", ["x", "", "'", "0"])
def test_parse_letter_rejects_malformed_tokens(token):
    with pytest.raises(ValueError):
        parse_letter(token)


def test_parse_letter_rejects_value_above_n():
    with pytest.raises(ValueError):
        parse_letter("3", 2)


def test_parse_word_splits_tokens():
    assert parse_word(["3' 2", "1'"], 3) == [Letter(3, True), Letter(2), Letter(1, True)]


def test_render():
    assert Letter(2, True).render() == "2" + BAR
    assert Letter(2, True).render(ascii_only=True) == "2'"
    assert tableau(2, "1 1'", "2'").render(ascii_only=True) == "1  1'\n2'"


def test_letter_weight():
    a = (Fraction(2), Fraction(3))
    assert letter_weight(a, Letter(2)) == 3
    assert letter_weight(a, Letter(1, True)) == Fraction(1, 2)


def test_validate():
    assert validate(tableau(2, "1 1' 2 2 2'", "2' 2'"))
    assert not validate(tableau(2, "1", "1'"))
    assert not validate(tableau(2, "2 1"))
    assert not validate(tableau(2, "1", "1"))
    assert not validate(SymplecticTableau(1, ((Letter(2),),)))


def test_tableau_weight():
    t = tableau(2, "1 1' 2 2 2'", "2' 2'")
    assert tableau_weight(t, (Fraction(2), Fraction(3))) == Fraction(1, 3)
    with pytest.raises(ValueError):
        tableau_weight(t, (Fraction(2), Fraction(0)))


def test_jeu_de_taquin_slides_right_then_down():
    assert jeu_de_taquin(punctured(2, "_ 1 2", "2 2")) == tableau(2, "1 2 2", "2")


def test_jeu_de_taquin_prefers_the_smaller_neighbour():
    assert jeu_de_taquin(punctured(1, "_ 1", "1'")) == tableau(1, "1", "1'")


def test_punctured_tableau_needs_exactly_one_hole():
    with pytest.raises(ValueError):
        punctured(2, "_ _ 2")


def test_berele_insert_appends_and_bumps():
    t, shape = berele_insert(tableau(2, "1 2"), Letter(1, True))
    assert t == tableau(2, "1 1'", "2")
    assert shape == P(2, 1)


def test_berele_insert_cancels_k_against_k_bar():
    t, shape = berele_insert(tableau(1, "1'"), Letter(1))
    assert t == SymplecticTableau(1)
    assert shape == EMPTY


def test_berele_insert_cancellation_in_a_lower_row():
    t, shape = berele_insert(tableau(3, "1 1 2 2'", "2 2' 3", "3 3'"), Letter(1, True))
    assert t == tableau(3, "1 1 1' 2'", "2 3", "3 3'")
    assert shape == P(4, 2, 2)


def test_berele_insert_rejects_invalid_tableau():
    with pytest.raises(ValueError):
        berele_insert(tableau(2, "2 1"), Letter(1))


def test_berele_word_example():
    word = parse_word(["3' 2 1' 3' 1 2 1"], 3)
    t, f = berele_word(word, 3)
    assert t == tableau(3, "1 2", "2 3'", "3'")
    assert f.shapes == (EMPTY, P(1), P(1, 1), P(1, 1, 1), P(2, 1, 1), P(2, 1), P(2, 2), P(2, 2, 1))
    assert t.shape == f.final


def test_empty_word_gives_empty_tableau():
    t, f = berele_word([], 2)
    assert t.rows == ()
    assert f.shapes == (EMPTY,)


def test_oscillating_tableau_validation():
    OscillatingTableau((EMPTY, P(1), P(1, 1), P(1)))
    with pytest.raises(ValueError):
        OscillatingTableau((EMPTY, P(2)))
    with pytest.raises(ValueError):
        OscillatingTableau((P(1),))


def test_enumerate_oscillating():
    assert [f.shapes for f in enumerate_oscillating(1, 2)] == [(EMPTY, P(1), EMPTY), (EMPTY, P(1), P(2))]
    assert len(enumerate_oscillating(2, 2, EMPTY)) == 1
    assert len(enumerate_oscillating(2, 3, P(1))) == 3
    assert enumerate_oscillating(2, 1, P(2)) == []


def test_enumerate_tableaux_small_shapes():
    assert {t for t in enumerate_tableaux(P(1), 1)} == {tableau(1, "1"), tableau(1, "1'")}
    assert len(enumerate_tableaux(P(1), 2)) == 4
    assert all(validate(t) for t in enumerate_tableaux(P(2, 1), 2))


words = st.lists(st.sampled_from(alphabet(2)), max_size=7)


@given(words)
def test_berele_word_produces_valid_tableaux(word):
    t, f = berele_word(word, 2)
    assert validate(t)
    assert t.shape == f.final
    assert f.in_lambda(2)


@given(words)
def test_berele_word_preserves_the_word_weight(word):
    a = (Fraction(2), Fraction(5))
    t, _ = berele_word(word, 2)
    assert tableau_weight(t, a) == word_weight(a, word)
