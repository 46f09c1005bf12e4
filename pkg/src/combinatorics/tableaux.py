"""
Symplectic Tableaux
Letters of the alphabet 1 < 1̄ < ... < n < n̄, symplectic Young tableaux,
jeu de taquin, and the deterministic Berele row insertion with its
recording oscillating tableau.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from src.combinatorics.partitions import EMPTY, Partition, as_partition, one_box_neighbors

BAR = "̄"


@dataclass(frozen=True, order=True)
class Letter:
    """A letter k or k̄; dataclass ordering on (value, barred) is the alphabet order."""

    value: int
    barred: bool = False

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"Letter value must be >= 1, got {self.value}")

    @property
    def order(self) -> int:
        return 2 * self.value if self.barred else 2 * self.value - 1

    @classmethod
    def from_order(cls, order: int) -> "Letter":
        if order < 1:
            raise ValueError(f"Letter order must be >= 1, got {order}")
        return cls((order + 1) // 2, order % 2 == 0)

    def render(self, ascii_only: bool = False) -> str:
        if not self.barred:
            return str(self.value)
        return f"{self.value}'" if ascii_only else f"{self.value}{BAR}"

    def to_json(self) -> dict:
        return {"v": self.value, "bar": self.barred}

    def __str__(self) -> str:
        return self.render()


def parse_letter(token: str, n: Optional[int] = None) -> Letter:
    """
    Parse "k", "k'" or "k" followed by a combining macron.

    Raises:
        ValueError: malformed token, or a value above n when n is given
    """
    text = token.strip()
    barred = False
    if text.endswith("'") or text.endswith(BAR):
        barred = True
        text = text[:-1]
    if not text.isdigit():
        raise ValueError(f"Malformed letter token: {token!r} (expected e.g. 2, 2' or 2{BAR})")
    letter = Letter(int(text), barred)
    if n is not None and letter.value > n:
        raise ValueError(f"Letter {token!r} is outside the alphabet [{n},{n}{BAR}]")
    return letter


def parse_word(tokens: Iterable[str], n: Optional[int] = None) -> list[Letter]:
    """Parse whitespace-separated tokens, accepting several tokens per argument."""
    return [parse_letter(piece, n) for token in tokens for piece in token.split()]


def alphabet(n: int) -> list[Letter]:
    return [Letter.from_order(k) for k in range(1, 2 * n + 1)]


def letter_weight(a: Sequence[Fraction], letter: Letter) -> Fraction:
    """a_l for l = k, and 1/a_k for l = k̄."""
    base = Fraction(a[letter.value - 1])
    return 1 / base if letter.barred else base


def word_weight(a: Sequence[Fraction], word: Iterable[Letter]) -> Fraction:
    total = Fraction(1)
    for letter in word:
        total *= letter_weight(a, letter)
    return total


@dataclass(frozen=True)
class SymplecticTableau:
    n: int
    rows: tuple[tuple[Letter, ...], ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows if len(row) > 0)
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Partition:
        lengths = [len(row) for row in self.rows]
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise ValueError(f"Rows do not form a Young diagram: lengths {lengths}")
        return Partition(tuple(lengths))

    def letters(self) -> list[Letter]:
        return [letter for row in self.rows for letter in row]

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[letter.to_json() for letter in row] for row in self.rows]}

    def render(self, ascii_only: bool = False) -> str:
        if not self.rows:
            return "∅" if not ascii_only else "(empty)"
        width = max(len(letter.render(ascii_only)) for letter in self.letters())
        return "\n".join(
            " ".join(letter.render(ascii_only).ljust(width) for letter in row).rstrip()
            for row in self.rows
        )


@dataclass(frozen=True)
class OscillatingTableau:
    """Shapes f^0 = ∅, f^1, ..., f^m with consecutive shapes one box apart."""

    shapes: tuple[Partition, ...] = (EMPTY,)

    def __post_init__(self):
        shapes = tuple(as_partition(s) for s in self.shapes)
        if not shapes or shapes[0] != EMPTY:
            raise ValueError("An oscillating tableau starts at the empty partition")
        for before, after in zip(shapes, shapes[1:]):
            if abs(sum(after) - sum(before)) != 1 or after not in one_box_neighbors(
                before, max(len(before), len(after), 1)
            ):
                raise ValueError(f"Shapes {before} and {after} do not differ by one box")
        object.__setattr__(self, "shapes", shapes)

    @property
    def final(self) -> Partition:
        return self.shapes[-1]

    def __len__(self) -> int:
        return len(self.shapes) - 1

    def extended(self, shape: Partition) -> "OscillatingTableau":
        return OscillatingTableau(self.shapes + (shape,))

    def in_lambda(self, n: int) -> bool:
        return all(shape.in_lambda(n) for shape in self.shapes)

    def to_json(self) -> list[list[int]]:
        return [shape.to_json() for shape in self.shapes]


@dataclass(frozen=True)
class PuncturedTableau:
    """A filling with exactly one empty cell at `hole` (0-indexed row, column)."""

    n: int
    rows: tuple[tuple[Optional[Letter], ...], ...]
    hole: tuple[int, int]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        i, j = self.hole
        if i >= len(rows) or j >= len(rows[i]) or rows[i][j] is not None:
            raise ValueError(f"Hole {self.hole} is not an empty cell of the tableau")
        empties = sum(cell is None for row in rows for cell in row)
        if empties != 1:
            raise ValueError(f"A punctured tableau has exactly one empty cell, found {empties}")
        for r, row in enumerate(rows):
            filled = [cell for cell in row if cell is not None]
            if any(a > b for a, b in zip(filled, filled[1:])):
                raise ValueError(f"Row {r + 1} is not weakly increasing around the hole")
            if r + 1 < len(rows):
                if len(rows[r + 1]) > len(row):
                    raise ValueError("Rows of a punctured tableau must weakly shorten")
                for c, below in enumerate(rows[r + 1]):
                    above = row[c]
                    if above is None or below is None:
                        continue
                    if not above < below:
                        raise ValueError(f"Column {c + 1} is not strictly increasing at row {r + 1}")
        if i + 1 < len(rows) and j < len(rows[i + 1]) and i > 0:
            if not rows[i - 1][j] < rows[i + 1][j]:
                raise ValueError(f"Column {j + 1} is not strictly increasing across the hole")


def validate(t: SymplecticTableau) -> bool:
    """(S1) rows weakly increase, (S2) columns strictly increase, (S3) row i holds no entry < i."""
    lengths = [len(row) for row in t.rows]
    if any(a < b for a, b in zip(lengths, lengths[1:])):
        return False
    for i, row in enumerate(t.rows, start=1):
        if any(letter.value > t.n for letter in row):
            return False
        if any(a > b for a, b in zip(row, row[1:])):
            return False
        if any(letter.value < i for letter in row):
            return False
    for upper, lower in zip(t.rows, t.rows[1:]):
        if any(not a < b for a, b in zip(upper, lower)):
            return False
    return True


def jeu_de_taquin(t: PuncturedTableau) -> SymplecticTableau:
    """
    Slide the empty cell out of the tableau.

    The hole swaps with its right neighbour when that neighbour is smaller
    than the one below, otherwise with the one below; with a single
    neighbour it swaps with that one. When neither exists the cell is deleted.
    """
    rows = [list(row) for row in t.rows]
    i, j = t.hole
    while True:
        right = rows[i][j + 1] if j + 1 < len(rows[i]) else None
        below = rows[i + 1][j] if i + 1 < len(rows) and j < len(rows[i + 1]) else None
        if right is None and below is None:
            break
        if below is None or (right is not None and right < below):
            rows[i][j], rows[i][j + 1] = right, None
            j += 1
        else:
            rows[i][j], rows[i + 1][j] = below, None
            i += 1
    del rows[i][j]
    return SymplecticTableau(t.n, tuple(tuple(row) for row in rows if row))


def berele_insert(t: SymplecticTableau, letter: Letter) -> tuple[SymplecticTableau, Partition]:
    """
    Row-insert `letter` into `t`.

    Inserting k into row k when it would bump k̄ erases both letters and
    the vacated cell is removed by jeu de taquin.

    Returns:
        (new tableau, its shape)

    Raises:
        ValueError: if t is not a symplectic tableau or the letter exceeds n
    """
    if not validate(t):
        raise ValueError(f"Not a symplectic tableau over [{t.n},{t.n}{BAR}]:\n{t.render()}")
    if letter.value > t.n:
        raise ValueError(f"Letter {letter} is outside the alphabet of size {t.n}")

    rows = [list(row) for row in t.rows]
    current = letter
    r = 0
    while True:
        if r == len(rows):
            rows.append([current])
            break
        row = rows[r]
        j = next((j for j, entry in enumerate(row) if entry > current), None)
        if j is None:
            row.append(current)
            break
        bumped = row[j]
        if not current.barred and current.value == r + 1 and bumped == Letter(r + 1, True):
            row[j] = None
            result = jeu_de_taquin(PuncturedTableau(t.n, tuple(map(tuple, rows)), (r, j)))
            return result, result.shape
        row[j] = current
        current = bumped
        r += 1

    result = SymplecticTableau(t.n, tuple(map(tuple, rows)))
    return result, result.shape


def berele_word(word: Sequence[Letter], n: int) -> tuple[SymplecticTableau, OscillatingTableau]:
    """Insert the letters in order from the empty tableau and record every shape."""
    tableau = SymplecticTableau(n)
    shapes = [EMPTY]
    for letter in word:
        tableau, shape = berele_insert(tableau, letter)
        shapes.append(shape)
    return tableau, OscillatingTableau(tuple(shapes))


def tableau_weight(t: SymplecticTableau, a: Sequence[Fraction]) -> Fraction:
    """a^P = prod a_k^{#k - #k̄}."""
    if len(a) < t.n:
        raise ValueError(f"Need {t.n} weights a_1..a_{t.n}, got {len(a)}")
    if any(Fraction(value) <= 0 for value in a):
        raise ValueError(f"Weights must be positive, got {[str(v) for v in a]}")
    return word_weight(a, t.letters())


def enumerate_tableaux(shape: Partition, n: int) -> list[SymplecticTableau]:
    """All symplectic tableaux of the given shape, via the pattern bijection."""
    from src.combinatorics.patterns import enumerate_patterns, pattern_to_tableau

    return [pattern_to_tableau(z) for z in enumerate_patterns(shape, n)]


def enumerate_oscillating(
    n: int, m: int, end: Optional[Partition] = None
) -> list[OscillatingTableau]:
    """All length-m oscillating tableaux in Lambda_n, optionally with a fixed final shape."""
    if m < 0:
        raise ValueError(f"Length must be nonnegative, got {m}")
    found = []

    def extend(path: list[Partition]):
        if len(path) == m + 1:
            if end is None or path[-1] == end:
                found.append(OscillatingTableau(tuple(path)))
            return
        remaining = m + 1 - len(path)
        for shape in sorted(one_box_neighbors(path[-1], n)):
            if end is not None and abs(sum(shape) - sum(end)) > remaining - 1:
                continue
            extend(path + [shape])

    extend([EMPTY])
    return found
