"""
Random Words and Shape Chains
Letters drawn i.i.d. from rho, the induced Markov chains on patterns and
shapes (classic and q-deformed), the Doob h-transform picture of the
classic shape chain, and exact laws to validate samples against.
"""

import sys
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from src.combinatorics.kernels import ParamContext, kernel_K, kernel_L
from src.combinatorics.partitions import EMPTY, Partition, as_partition, enumerate_lambda_n, one_box_neighbors
from src.combinatorics.patterns import GtPattern, zero_pattern
from src.combinatorics.qinsert import phi_word_sum, sample_insert, words
from src.combinatorics.symfunc import oscillating_weights, p_function, q_count, sp_schur
from src.combinatorics.tableaux import Letter, alphabet, berele_word, tableau_weight
from src.utils.reports import IdentityReport

# --- CONFIGURATION ---
UNIFORM_BITS = 64
PROGRESS_EVERY = 10000

SeedLike = Union[int, np.random.SeedSequence]


@dataclass(frozen=True)
class LetterDistribution:
    """rho(k) = a_k / S and rho(k̄) = 1 / (a_k S), S = sum_i (a_i + 1/a_i)."""

    pc: ParamContext
    probabilities: tuple[tuple[Letter, Fraction], ...]

    def prob(self, letter: Letter) -> Fraction:
        return dict(self.probabilities)[letter]

    def sample(self, u: Fraction) -> Letter:
        cumulative = Fraction(0)
        for letter, p in self.probabilities:
            cumulative += p
            if u < cumulative:
                return letter
        return self.probabilities[-1][0]


def letter_distribution(pc: ParamContext) -> LetterDistribution:
    total = pc.normalizer
    return LetterDistribution(pc, tuple((letter, pc.weight(letter) / total) for letter in alphabet(pc.n)))


def check_seed(seed: int) -> int:
    if not 0 <= seed < 2 ** UNIFORM_BITS:
        raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(check_seed(seed)))


def uniform_fraction(rng: np.random.Generator) -> Fraction:
    """A uniform draw on the grid k / 2^64, kept exact."""
    k = rng.integers(0, 2 ** UNIFORM_BITS - 1, dtype=np.uint64, endpoint=True)
    return Fraction(int(k), 2 ** UNIFORM_BITS)


# --- Shape kernels ---

def shape_kernel_classic(pc: ParamContext, mu: Partition, lam: Partition) -> Fraction:
    """Pi(mu, lam) = Sp_lam / (S Sp_mu) for lam one box away from mu."""
    mu, lam = as_partition(mu), as_partition(lam)
    if lam not in one_box_neighbors(mu, pc.n):
        return Fraction(0)
    return sp_schur(pc, lam) / (pc.normalizer * sp_schur(pc, mu))


def shape_kernel_q(pc: ParamContext, mu: Partition, lam: Partition) -> Fraction:
    """Pi(mu, lam) = P_lam L_n(mu, lam) / (S P_mu)."""
    mu, lam = as_partition(mu), as_partition(lam)
    rate = kernel_L(pc, mu, lam)
    if rate == 0:
        return Fraction(0)
    return p_function(pc, lam) * rate / (pc.normalizer * p_function(pc, mu))


def check_shape_kernel_rows(pc: ParamContext, bound: int, kind: str = "q") -> IdentityReport:
    """Every row of the shape kernel sums to 1 over the one-box neighbours."""
    kernels = {"classic": shape_kernel_classic, "q": shape_kernel_q}
    if kind not in kernels:
        raise ValueError(f"Unknown shape kernel {kind!r}; choose from {sorted(kernels)}")
    kernel = kernels[kind]
    report = IdentityReport(f"{kind} shape kernel rows")
    for mu in enumerate_lambda_n(pc.n, bound):
        total = sum((kernel(pc, mu, lam) for lam in one_box_neighbors(mu, pc.n)), Fraction(0))
        report.record({"mu": mu}, total, Fraction(1))
    return report


def killed_walk_kernel(pc: ParamContext, mu: Partition, lam: Partition) -> Fraction:
    """The walk moving ±e_l with probabilities rho(l), rho(l̄), killed when it leaves the partitions."""
    mu, lam = as_partition(mu), as_partition(lam)
    rho = letter_distribution(pc)
    for k in range(1, pc.n + 1):
        if mu.shifted(k, +1) == lam:
            return rho.prob(Letter(k, False))
        if mu.shifted(k, -1) == lam:
            return rho.prob(Letter(k, True))
    return Fraction(0)


def harmonic_h(pc: ParamContext, x: Partition) -> Fraction:
    """h_n(x) = prod_l a_l^{-x_l} Sp_x."""
    x = as_partition(x)
    scale = Fraction(1)
    for a_l, x_l in zip(pc.a, x.padded(pc.n)):
        scale *= a_l ** (-x_l)
    return scale * sp_schur(pc, x)


def doob_decomposition_check(pc: ParamContext, bound: int) -> IdentityReport:
    """
    At q = 0: h_n is harmonic for the killed walk, and the classic shape
    kernel is its Doob transform, Pi(mu, lam) = rho^(mu, lam) h_n(lam) / h_n(mu).

    Raises:
        ValueError: if q is not 0
    """
    if pc.q != 0:
        raise ValueError(f"The Doob factorization holds for the classic chain only (q = 0), got q = {pc.q}")
    report = IdentityReport("doob")
    for mu in enumerate_lambda_n(pc.n, bound):
        neighbors = sorted(one_box_neighbors(mu, pc.n))
        h_mu = harmonic_h(pc, mu)
        harmonic = sum((killed_walk_kernel(pc, mu, lam) * harmonic_h(pc, lam) for lam in neighbors), Fraction(0))
        report.record({"mu": mu, "check": "harmonic"}, harmonic, h_mu)
        for lam in neighbors:
            report.record(
                {"mu": mu, "lambda": lam},
                shape_kernel_classic(pc, mu, lam),
                killed_walk_kernel(pc, mu, lam) * harmonic_h(pc, lam) / h_mu,
            )
    return report


# --- Simulation ---

@dataclass(frozen=True)
class SimulationPath:
    letters: tuple[Letter, ...]
    patterns: tuple[GtPattern, ...]
    shapes: tuple[Partition, ...]

    @property
    def final_pattern(self) -> GtPattern:
        return self.patterns[-1]

    @property
    def final_shape(self) -> Partition:
        return self.shapes[-1]


def simulate(pc: ParamContext, m: int, seed: SeedLike) -> SimulationPath:
    """
    Insert m letters drawn from rho, sampling each insertion exactly.

    Each step consumes two uniforms: one for the letter, one for the outcome.
    """
    if m < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {m}")
    rng = make_rng(seed)
    rho = letter_distribution(pc)
    z = zero_pattern(pc.n)
    letters, patterns, shapes = [], [z], [EMPTY]
    for _ in range(m):
        letter = rho.sample(uniform_fraction(rng))
        z = sample_insert(pc.ctx, z, letter, uniform_fraction(rng))
        letters.append(letter)
        patterns.append(z)
        shapes.append(z.shape)
    return SimulationPath(tuple(letters), tuple(patterns), tuple(shapes))


def simulate_runs(pc: ParamContext, m: int, runs: int, seed: int, verbose: bool = False) -> list[SimulationPath]:
    """Independent runs, each on its own child of SeedSequence(seed)."""
    if runs < 1:
        raise ValueError(f"Need at least one run, got {runs}")
    children = np.random.SeedSequence(check_seed(seed)).spawn(runs)
    paths = []
    for i, child in enumerate(children, start=1):
        paths.append(simulate(pc, m, child))
        if verbose and i % PROGRESS_EVERY == 0:
            print(f"  [{i}/{runs}] runs simulated", file=sys.stderr)
    return paths


# --- Exact laws ---

def shape_distribution(pc: ParamContext, m: int) -> dict[Partition, Fraction]:
    """nu(lam) = P_lam Q_m^lam(n;q) / S^m."""
    scale = pc.normalizer ** m
    return {
        lam: p_function(pc, lam) * w / scale
        for lam, w in sorted(oscillating_weights(pc, m).items())
    }


def conditional_pattern_law(pc: ParamContext, lam: Partition, z: GtPattern) -> Fraction:
    """Law of the pattern given the shape path: K_n(lam, Z) / P_lam."""
    return kernel_K(pc, lam, z) / p_function(pc, lam)


def exact_pattern_path_law(pc: ParamContext, m: int):
    """Joint law of (Z(m), shape path) from all (2n)^m words weighted by rho."""
    rho = letter_distribution(pc)
    return phi_word_sum(pc.ctx, pc.n, m, rho.prob)


def check_markov_laws(pc: ParamContext, m: int) -> IdentityReport:
    """
    The shape path is Markov with kernel shape_kernel_q, and given the path
    the pattern has law K_n(f^m, .) / P_{f^m}.
    """
    report = IdentityReport("markov laws")
    table = exact_pattern_path_law(pc, m)
    path_law = defaultdict(Fraction)
    for (_, f), w in table.entries.items():
        path_law[f] += w
    for f in sorted(path_law, key=lambda f: [s.parts for s in f.shapes]):
        expected = Fraction(1)
        for before, after in zip(f.shapes, f.shapes[1:]):
            expected *= shape_kernel_q(pc, before, after)
        report.record({"shapes": f}, path_law[f], expected)
    for (z, f), w in table.sorted_items():
        report.record({"pattern": z, "shapes": f}, w / path_law[f], conditional_pattern_law(pc, f.final, z))
    return report


def check_classic_word_law(pc: ParamContext, m: int) -> IdentityReport:
    """
    Under Berele insertion of a rho-random word, P((P, f)) = a^P / S^m and
    the final shape has law Sp_lam Q_m^lam(n) / S^m.
    """
    report = IdentityReport("classic word law")
    rho = letter_distribution(pc)
    pair_law = defaultdict(Fraction)
    for word in words(pc.n, m):
        prob = Fraction(1)
        for letter in word:
            prob *= rho.prob(letter)
        tableau, f = berele_word(word, pc.n)
        pair_law[(tableau, f)] += prob
    scale = pc.normalizer ** m
    shape_law = defaultdict(Fraction)
    for (tableau, f), prob in pair_law.items():
        report.record({"tableau": tableau, "shapes": f}, prob, tableau_weight(tableau, pc.a) / scale)
        shape_law[f.final] += prob
    classic = pc.with_q(0)
    for lam, prob in sorted(shape_law.items()):
        report.record({"lambda": lam}, prob, sp_schur(pc, lam) * q_count(classic, m, lam) / scale)
    return report


def replay_classic(path: SimulationPath, n: int) -> tuple[Partition, ...]:
    """Shapes produced by Berele insertion of the letters a simulation drew."""
    _, f = berele_word(path.letters, n)
    return f.shapes
