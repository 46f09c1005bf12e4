from fractions import Fraction

import numpy as np
import pytest

from src.combinatorics.kernels import ParamContext
from src.combinatorics.partitions import EMPTY, Partition, enumerate_lambda_n, one_box_neighbors
from src.combinatorics.patterns import tableau_to_pattern, zero_pattern
from src.combinatorics.qinsert import shapes_of
from src.combinatorics.tableaux import Letter, berele_word
from src.generators.chain import (
    check_classic_word_law,
    check_markov_laws,
    check_seed,
    check_shape_kernel_rows,
    doob_decomposition_check,
    exact_pattern_path_law,
    harmonic_h,
    killed_walk_kernel,
    letter_distribution,
    make_rng,
    replay_classic,
    shape_distribution,
    shape_kernel_classic,
    shape_kernel_q,
    simulate,
    simulate_runs,
    uniform_fraction,
)

P = Partition.of
ONE = ParamContext.build(1, ["2"], "1/2")
TWO = ParamContext.build(2, ["2", "3"], "1/2")


def test_letter_distribution():
    rho = letter_distribution(ONE)
    assert rho.prob(Letter(1)) == Fraction(4, 5)
    assert rho.prob(Letter(1, True)) == Fraction(1, 5)
    assert rho.sample(Fraction(0)) == Letter(1)
    assert rho.sample(Fraction(4, 5)) == Letter(1, True)
    assert sum(p for _, p in letter_distribution(TWO).probabilities) == 1


def test_classic_shape_kernel():
    assert shape_kernel_classic(ONE, P(1), P(2)) == Fraction(21, 25)
    assert shape_kernel_classic(ONE, P(1), EMPTY) == Fraction(4, 25)
    assert shape_kernel_classic(ONE, P(1), P(3)) == 0


def test_q_shape_kernel():
    assert shape_kernel_q(ONE, P(1), P(2)) == Fraction(23, 25)
    assert shape_kernel_q(ONE, P(1), EMPTY) == Fraction(2, 25)


@pytest.mark.parametrize("kind", ["classic", "q"])
@pytest.mark.parametrize("pc", [ONE, TWO])
def test_shape_kernel_rows_sum_to_one(pc, kind):
    assert check_shape_kernel_rows(pc, 3, kind).passed


def test_unknown_shape_kernel():
    with pytest.raises(ValueError):
        check_shape_kernel_rows(ONE, 2, "quantum")


def test_killed_walk_and_harmonic_function():
    assert killed_walk_kernel(ONE, P(1), P(2)) == Fraction(4, 5)
    assert killed_walk_kernel(ONE, P(1), EMPTY) == Fraction(1, 5)
    assert killed_walk_kernel(ONE, EMPTY, P(2)) == 0
    assert harmonic_h(ONE, P(1)) == Fraction(5, 4)
    for mu in enumerate_lambda_n(2, 2):
        assert sum(killed_walk_kernel(TWO, mu, lam) for lam in one_box_neighbors(mu, 2)) <= 1


@pytest.mark.parametrize("pc", [ONE.with_q(0), TWO.with_q(0)])
def test_doob_decomposition(pc):
    assert doob_decomposition_check(pc, 3).passed


def test_doob_requires_the_classic_chain():
    with pytest.raises(ValueError):
        doob_decomposition_check(ONE, 2)


def test_uniform_draws():
    rng = make_rng(7)
    draws = [uniform_fraction(rng) for _ in range(50)]
    assert all(0 <= u < 1 for u in draws)
    assert all(u.denominator <= 2 ** 64 for u in draws)
    assert draws == [uniform_fraction(r) for r in [make_rng(7)] for _ in range(50)]


@pytest.mark.parametrize("seed", [-1, 2 ** 64])
def test_seed_range(seed):
    with pytest.raises(ValueError):
        check_seed(seed)


def test_simulation_is_reproducible():
    first = simulate(TWO, 6, 11)
    second = simulate(TWO, 6, 11)
    assert first == second
    assert len(first.letters) == 6
    assert first.shapes == tuple(z.shape for z in first.patterns)


def test_simulation_accepts_seed_sequences():
    child = np.random.SeedSequence(3).spawn(1)[0]
    assert simulate(ONE, 4, child).final_shape in shape_distribution(ONE, 4)


def test_empty_simulation():
    path = simulate(TWO, 0, 7)
    assert path.patterns == (zero_pattern(2),)
    assert path.final_shape == EMPTY
    with pytest.raises(ValueError):
        simulate(TWO, -1, 7)


def test_classic_simulation_replays_through_berele_insertion():
    classic = TWO.with_q(0)
    for seed in range(5):
        path = simulate(classic, 6, seed)
        assert replay_classic(path, 2) == path.shapes
        tableau, _ = berele_word(path.letters, 2)
        assert tableau_to_pattern(tableau) == path.final_pattern


def test_simulate_runs():
    paths = simulate_runs(ONE, 3, 20, 7)
    assert len(paths) == 20
    assert paths == simulate_runs(ONE, 3, 20, 7)
    with pytest.raises(ValueError):
        simulate_runs(ONE, 3, 0, 7)


def test_shape_distribution():
    assert shape_distribution(ONE, 1) == {P(1): 1}
    for pc, m in ((ONE, 3), (TWO, 3)):
        nu = shape_distribution(pc, m)
        assert sum(nu.values()) == 1
        assert nu == shapes_of(exact_pattern_path_law(pc, m))


@pytest.mark.parametrize("pc, m", [(ONE, 3), (TWO, 2), (TWO.with_q("1/3"), 3)])
def test_markov_laws(pc, m):
    report = check_markov_laws(pc, m)
    assert report.passed, report.failures[:3]


def test_classic_word_law():
    report = check_classic_word_law(TWO, 3)
    assert report.passed, report.failures[:3]


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["classic", "q"])
@pytest.mark.parametrize("pc", [ONE, TWO, TWO.with_q("2/3")])
def test_shape_kernel_rows_up_to_first_part_four(pc, kind):
    report = check_shape_kernel_rows(pc, 4, kind)
    assert report.passed, report.failures[:3]
    assert report.instances_checked == len(enumerate_lambda_n(pc.n, 4))


@pytest.mark.slow
@pytest.mark.parametrize("pc", [ONE, TWO, TWO.with_q("1/3"), TWO.with_q(0)])
def test_markov_laws_four_steps(pc):
    report = check_markov_laws(pc, 4)
    assert report.passed, report.failures[:3]
