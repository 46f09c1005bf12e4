"""
Symplectic Gelfand-Tsetlin Patterns
Patterns with 2n interlaced levels (levels 2l-1 and 2l hold l particles),
the bijection with symplectic tableaux, and the deterministic particle
cascade that mirrors Berele insertion.
"""

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from src.combinatorics.partitions import Partition, as_partition, interlacing_tuples
from src.combinatorics.tableaux import Letter, SymplecticTableau, validate


def level_length(k: int) -> int:
    """Number of particles on level k."""
    return (k + 1) // 2


@dataclass(frozen=True, order=True)
class GtPattern:
    """Levels z^1..z^{2n} as zero-padded tuples; levels[k-1] is z^k."""

    n: int
    levels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        levels = tuple(tuple(int(v) for v in level) for level in self.levels)
        object.__setattr__(self, "levels", levels)
        if self.n < 1:
            raise ValueError(f"A pattern needs n >= 1, got {self.n}")
        if len(levels) != 2 * self.n:
            raise ValueError(f"Expected {2 * self.n} levels, got {len(levels)}")
        for k, level in enumerate(levels, start=1):
            if len(level) != level_length(k):
                raise ValueError(f"Level {k} must hold {level_length(k)} particles, got {level}")
            if any(v < 0 for v in level) or any(a < b for a, b in zip(level, level[1:])):
                raise ValueError(f"Level {k} is not a partition: {level}")
        for k in range(1, 2 * self.n):
            if not interlacing_tuples(levels[k - 1], levels[k]):
                raise ValueError(
                    f"Levels {k} and {k + 1} do not interlace: {levels[k - 1]} vs {levels[k]}"
                )

    def level(self, k: int) -> tuple[int, ...]:
        """z^k with z^0 = ()."""
        if k == 0:
            return ()
        return self.levels[k - 1]

    @property
    def shape(self) -> Partition:
        return Partition(self.levels[-1])

    def key(self) -> str:
        return "|".join(",".join(str(v) for v in level) for level in self.levels)

    def to_json(self) -> dict:
        return {"n": self.n, "levels": [list(level) for level in self.levels]}

    def render(self) -> str:
        """One line per level, indented like the cone picture."""
        width = 2 * self.n
        return "\n".join(
            f"z{k}: " + " " * (width - len(level)) + " ".join(str(v) for v in level)
            for k, level in enumerate(self.levels, start=1)
        )


def zero_pattern(n: int) -> GtPattern:
    return GtPattern(n, tuple((0,) * level_length(k) for k in range(1, 2 * n + 1)))


def levels_below(lower: tuple[int, ...], length: int) -> Iterator[tuple[int, ...]]:
    """Every level of the given length interlacing under `lower`."""
    bounds = lower + (0,)
    ranges = [range(bounds[i + 1], bounds[i] + 1) for i in range(length)]
    yield from product(*ranges)


def enumerate_patterns(shape: Partition, n: int) -> list[GtPattern]:
    """
    All patterns whose bottom level equals `shape`.

    Built by chained interlacing from level 2n upward, so the result is the
    support of every pattern-indexed sum over a fixed shape.
    """
    shape = as_partition(shape)
    if not shape.in_lambda(n):
        raise ValueError(f"{shape} is not in Lambda_{n}")
    found = []

    def grow(levels: list[tuple[int, ...]]):
        k = 2 * n - len(levels)
        if k == 0:
            found.append(GtPattern(n, tuple(reversed(levels))))
            return
        for level in levels_below(levels[-1], level_length(k)):
            grow(levels + [level])

    grow([shape.padded(n)])
    return found


def tableau_to_pattern(t: SymplecticTableau) -> GtPattern:
    """z^k is the shape of the sub-tableau of entries of order at most k."""
    if not validate(t):
        raise ValueError(f"Not a symplectic tableau:\n{t.render()}")
    levels = []
    for k in range(1, 2 * t.n + 1):
        counts = [sum(letter.order <= k for letter in row) for row in t.rows]
        counts = (counts + [0] * level_length(k))[: level_length(k)]
        levels.append(tuple(counts))
    return GtPattern(t.n, tuple(levels))


def pattern_to_tableau(z: GtPattern) -> SymplecticTableau:
    """Row i receives z^k_i - z^{k-1}_i copies of the letter of order k."""
    rows = []
    for i in range(z.n):
        row = []
        for k in range(2 * i + 1, 2 * z.n + 1):
            previous = z.level(k - 1)
            before = previous[i] if i < len(previous) else 0
            row.extend([Letter.from_order(k)] * (z.level(k)[i] - before))
        rows.append(tuple(row))
    return SymplecticTableau(z.n, tuple(rows))


def _bump(levels: list[list[int]], k: int, i: int, delta: int):
    levels[k - 1][i - 1] += delta


def classic_insert_pattern(z: GtPattern, letter: Letter) -> GtPattern:
    """
    Deterministic particle cascade for inserting `letter`.

    Starts with an attempted right jump of z^{order}_1. Comparisons always
    read the levels of the original pattern.
    """
    if letter.value > z.n:
        raise ValueError(f"Letter {letter} is outside the alphabet of size {z.n}")
    bottom = 2 * z.n
    levels = [list(level) for level in z.levels]
    k, i, rightward = letter.order, 1, True
    while True:
        upper, lower = z.level(k), z.level(k + 1) if k < bottom else ()
        if rightward:
            on_diagonal = k % 2 == 1 and i == level_length(k)
            if k == bottom:
                _bump(levels, k, i, +1)
                break
            blocked = upper[i - 1] == lower[i - 1]
            if on_diagonal and not blocked:
                # suppressed: the particle below is pulled left
                rightward = False
                k += 1
                continue
            _bump(levels, k, i, +1)
            if not blocked:
                i += 1
            k += 1
        else:
            _bump(levels, k, i, -1)
            if k == bottom:
                break
            if i < len(lower) and upper[i - 1] == lower[i]:
                i += 1
            k += 1
    return GtPattern(z.n, tuple(tuple(level) for level in levels))
