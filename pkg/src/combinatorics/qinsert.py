"""
q-Deformed Insertion
Jump probabilities r_i and l_i, the one-letter insertion kernel I_l as an
exact finite distribution over patterns, and the word weights phi_w.

The cascade mirrors classic_insert_pattern, except that every
push-or-pull decision becomes a coin with probability r_i (rightward) or
l_i (leftward), evaluated on the pre-insertion levels.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from src.combinatorics.exact import QContext
from src.combinatorics.partitions import EMPTY, Partition, interlacing_tuples
from src.combinatorics.patterns import GtPattern, level_length, zero_pattern
from src.combinatorics.tableaux import Letter, OscillatingTableau, alphabet


@dataclass(frozen=True)
class InterlacedPair:
    """Upper level x over lower level y, same length or one shorter."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        x, y = tuple(self.x), tuple(self.y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if len(y) not in (len(x), len(x) + 1):
            raise ValueError(f"Levels of lengths {len(x)} and {len(y)} cannot interlace")
        if not interlacing_tuples(x, y):
            raise ValueError(f"Interlacing violated: x={x} over y={y}")

    @property
    def mode(self) -> str:
        return "same" if len(self.x) == len(self.y) else "grow"

    def x_at(self, i: int) -> Optional[int]:
        """x_i with x_0 = infinity (None) and absent parts 0."""
        if i == 0:
            return None
        return self.x[i - 1] if i <= len(self.x) else 0

    def y_at(self, i: int) -> int:
        return self.y[i - 1] if i <= len(self.y) else 0


def _check_index(pair: InterlacedPair, i: int):
    if not 1 <= i <= len(pair.x):
        raise ValueError(f"Index {i} out of range for x={pair.x}")


def r_prob(ctx: QContext, pair: InterlacedPair, i: int) -> Fraction:
    """
    r_i(y;x) = q^{y_i - x_i} (1 - q^{x_{i-1} - y_i}) / (1 - q^{x_{i-1} - x_i}).

    x_0 is infinite, so r_1 = q^{y_1 - x_1}; r_i = 1 when x_{i-1} = x_i.
    """
    _check_index(pair, i)
    x_i, y_i = pair.x_at(i), pair.y_at(i)
    value = ctx.power(y_i - x_i)
    x_prev = pair.x_at(i - 1)
    if x_prev is None:
        return value
    if x_prev == x_i:
        return Fraction(1)
    return value * (1 - ctx.power(x_prev - y_i)) / (1 - ctx.power(x_prev - x_i))


def l_prob(ctx: QContext, pair: InterlacedPair, i: int) -> Fraction:
    """
    l_i(y;x) = q^{x_i - y_{i+1}} (1 - q^{y_{i+1} - x_{i+1}}) / (1 - q^{x_i - x_{i+1}}).

    Absent parts are 0; l_i = 1 when x_i = x_{i+1}.
    """
    _check_index(pair, i)
    x_i, x_next, y_next = pair.x_at(i), pair.x_at(i + 1), pair.y_at(i + 1)
    if x_i == x_next:
        return Fraction(1)
    return (
        ctx.power(x_i - y_next)
        * (1 - ctx.power(y_next - x_next))
        / (1 - ctx.power(x_i - x_next))
    )


@dataclass(frozen=True)
class PatternDistribution:
    """Outcome patterns with exact probabilities, sorted by pattern."""

    outcomes: tuple[tuple[GtPattern, Fraction], ...]

    @classmethod
    def from_mapping(cls, mapping: dict) -> "PatternDistribution":
        items = tuple(sorted((z, p) for z, p in mapping.items() if p != 0))
        return cls(items)

    @cached_property
    def mapping(self) -> dict[GtPattern, Fraction]:
        return dict(self.outcomes)

    def get(self, z: GtPattern) -> Fraction:
        return self.mapping.get(z, Fraction(0))

    def total(self) -> Fraction:
        return sum((p for _, p in self.outcomes), Fraction(0))

    def to_json(self) -> list[dict]:
        return [{"pattern": z.to_json(), "prob": str(p)} for z, p in self.outcomes]


def _shifted(levels: tuple, k: int, i: int, delta: int) -> tuple:
    level = list(levels[k - 1])
    level[i - 1] += delta
    return levels[: k - 1] + (tuple(level),) + levels[k:]


class _Cascade:
    """Branching exploration of one insertion; probabilities read the original pattern."""

    def __init__(self, ctx: QContext, z: GtPattern):
        self.ctx = ctx
        self.z = z
        self.bottom = 2 * z.n
        self.outcomes = defaultdict(Fraction)

    def pair(self, k: int) -> InterlacedPair:
        return InterlacedPair(self.z.level(k), self.z.level(k + 1))

    def right(self, levels: tuple, k: int, i: int, prob: Fraction):
        if k == self.bottom:
            self.outcomes[_shifted(levels, k, i, +1)] += prob
            return
        r = r_prob(self.ctx, self.pair(k), i)
        if k % 2 == 1 and i == level_length(k):
            # attempted jump on the diagonal: performed with probability r
            if r != 0:
                self.right(_shifted(levels, k, i, +1), k + 1, i, prob * r)
            if r != 1:
                self.left(levels, k + 1, i, prob * (1 - r))
            return
        moved = _shifted(levels, k, i, +1)
        if r != 0:
            self.right(moved, k + 1, i, prob * r)
        if r != 1:
            self.right(moved, k + 1, i + 1, prob * (1 - r))

    def left(self, levels: tuple, k: int, i: int, prob: Fraction):
        moved = _shifted(levels, k, i, -1)
        if k == self.bottom:
            self.outcomes[moved] += prob
            return
        pull = l_prob(self.ctx, self.pair(k), i)
        if pull != 0:
            self.left(moved, k + 1, i + 1, prob * pull)
        if pull != 1:
            self.left(moved, k + 1, i, prob * (1 - pull))


@lru_cache(maxsize=None)
def insert_letter(ctx: QContext, z: GtPattern, letter: Letter) -> PatternDistribution:
    """
    Exact law of the pattern after inserting `letter` into `z`.

    Raises:
        ValueError: letter outside the alphabet, or an inconsistent cascade
    """
    if letter.value > z.n:
        raise ValueError(f"Letter {letter} is outside the alphabet of size {z.n}")
    cascade = _Cascade(ctx, z)
    cascade.right(z.levels, letter.order, 1, Fraction(1))
    return PatternDistribution.from_mapping(
        {GtPattern(z.n, levels): p for levels, p in cascade.outcomes.items()}
    )


def sample_insert(ctx: QContext, z: GtPattern, letter: Letter, u: Fraction) -> GtPattern:
    """Pick the outcome whose cumulative interval contains the uniform u in [0,1)."""
    if not 0 <= u < 1:
        raise ValueError(f"Uniform draw must lie in [0,1), got {u}")
    cumulative = Fraction(0)
    outcomes = insert_letter(ctx, z, letter).outcomes
    for pattern, p in outcomes:
        cumulative += p
        if u < cumulative:
            return pattern
    return outcomes[-1][0]


@dataclass
class WeightTable:
    """Weights of (pattern, oscillating tableau) pairs."""

    n: int
    entries: dict[tuple[GtPattern, OscillatingTableau], Fraction] = field(default_factory=dict)

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def sorted_items(self) -> list[tuple[tuple[GtPattern, OscillatingTableau], Fraction]]:
        return sorted(
            self.entries.items(),
            key=lambda item: (item[0][0].key(), [s.parts for s in item[0][1].shapes]),
        )

    def to_json(self) -> list[dict]:
        return [
            {"pattern": z.to_json(), "shapes": f.to_json(), "weight": str(w)}
            for (z, f), w in self.sorted_items()
        ]


def _step(ctx: QContext, table: dict, letter: Letter, scale: Fraction = Fraction(1)) -> dict:
    advanced = defaultdict(Fraction)
    for (z, f), w in table.items():
        for z2, p in insert_letter(ctx, z, letter).outcomes:
            advanced[(z2, f.extended(z2.shape))] += w * p * scale
    return dict(advanced)


def _initial(n: int) -> dict:
    return {(zero_pattern(n), OscillatingTableau((EMPTY,))): Fraction(1)}


def phi_word(ctx: QContext, word: Sequence[Letter], n: int) -> WeightTable:
    """phi_{wl}(Z~, f~) = sum_Z phi_w(Z, f) I_l(Z, Z~), starting from the zero pattern."""
    table = _initial(n)
    for letter in word:
        if letter.value > n:
            raise ValueError(f"Letter {letter} is outside the alphabet of size {n}")
        table = _step(ctx, table, letter)
    return WeightTable(n, table)


def phi_word_sum(
    ctx: QContext, n: int, m: int, weight: Callable[[Letter], Fraction]
) -> WeightTable:
    """
    Sum over all words of length m of (prod weight(w_i)) phi_w.

    Depth-first over words so that prefixes are shared.
    """
    if m < 0:
        raise ValueError(f"Word length must be nonnegative, got {m}")
    letters = alphabet(n)
    totals = defaultdict(Fraction)

    def descend(table: dict, depth: int):
        if depth == m:
            for key, w in table.items():
                totals[key] += w
            return
        for letter in letters:
            descend(_step(ctx, table, letter, weight(letter)), depth + 1)

    descend(_initial(n), 0)
    return WeightTable(n, {key: w for key, w in totals.items() if w != 0})


def words(n: int, m: int) -> Iterable[tuple[Letter, ...]]:
    """All (2n)^m words, in lexicographic alphabet order."""
    return product(alphabet(n), repeat=m)


def first_letter_pattern(n: int, letter: Letter) -> GtPattern:
    """The pattern of a single letter: z^k_1 = 1 exactly for k >= order."""
    return GtPattern(
        n,
        tuple(
            ((1 if k >= letter.order else 0),) + (0,) * (level_length(k) - 1)
            for k in range(1, 2 * n + 1)
        ),
    )


def shapes_of(table: WeightTable) -> dict[Partition, Fraction]:
    """Marginal weight of the final shape f^m."""
    marginal = defaultdict(Fraction)
    for (_, f), w in table.entries.items():
        marginal[f.final] += w
    return dict(marginal)
