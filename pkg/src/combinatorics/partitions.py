"""
Partitions
Value type for integer partitions plus the handful of relations the
insertion algorithms need: dominance, interlacing, one-box moves and a
bounded census of the set of partitions of length at most n.
"""

from dataclasses import dataclass
from itertools import accumulate, product, zip_longest
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing nonnegative parts, stored without trailing zeros."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"Partition parts must be nonnegative: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Partition parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def part(self, i: int) -> int:
        """lambda_i for 1-indexed i; absent parts read as 0."""
        if i < 1:
            raise ValueError(f"Partition index starts at 1, got {i}")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        if len(self.parts) > length:
            raise ValueError(f"{self} has more than {length} parts")
        return self.parts + (0,) * (length - len(self.parts))

    def in_lambda(self, n: int) -> bool:
        return len(self.parts) <= n

    def shifted(self, i: int, delta: int) -> "Partition | None":
        """lambda + delta*e_i, or None when the result is not a partition."""
        parts = list(self.padded(max(i, len(self.parts))))
        parts[i - 1] += delta
        if parts[i - 1] < 0:
            return None
        if i > 1 and parts[i - 2] < parts[i - 1]:
            return None
        if i < len(parts) and parts[i - 1] < parts[i]:
            return None
        return Partition(tuple(parts))

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = Partition()


def as_partition(value: "Partition | Iterable[int]") -> Partition:
    if isinstance(value, Partition):
        return value
    return Partition(tuple(value))


def parse_partition(text: str) -> Partition:
    """Read "2,1", "(2,1)", "2 1" or "∅" / "" for the empty partition."""
    body = text.strip().strip("()").replace(",", " ")
    if body in ("", "∅"):
        return EMPTY
    try:
        return Partition(tuple(int(token) for token in body.split()))
    except ValueError as exc:
        raise ValueError(f"Malformed partition {text!r}: {exc}") from exc


def weight(p: Partition) -> int:
    """|lambda|, the number of boxes."""
    return sum(p.parts)


def dominates(p: Partition, r: Partition) -> bool:
    """True iff every partial sum of p is at least the matching partial sum of r."""
    pairs = zip_longest(p.parts, r.parts, fillvalue=0)
    left, right = zip(*pairs) if (p.parts or r.parts) else ((), ())
    return all(a >= b for a, b in zip(accumulate(left), accumulate(right)))


def interlaces(mu: Partition, lam: Partition) -> bool:
    """mu ⪯ lam, i.e. lam_1 >= mu_1 >= lam_2 >= mu_2 >= ..."""
    length = max(len(mu), len(lam))
    for i in range(1, length + 1):
        if not (lam.part(i) >= mu.part(i) >= lam.part(i + 1)):
            return False
    return True


def interlacing_tuples(x: Sequence[int], y: Sequence[int]) -> bool:
    """Positional form of interlacing on fixed-length level tuples."""
    for i, xi in enumerate(x):
        below = y[i + 1] if i + 1 < len(y) else 0
        if i >= len(y) or not (y[i] >= xi >= below):
            return False
    return all(v == 0 for v in y[len(x) + 1:])


def one_box_neighbors(p: Partition, n: int) -> set[Partition]:
    """Every lambda in Lambda_n obtained from p by adding or deleting a single box."""
    if not p.in_lambda(n):
        raise ValueError(f"{p} is not in Lambda_{n} (more than {n} parts)")
    neighbors = set()
    for i in range(1, n + 1):
        for delta in (1, -1):
            moved = p.shifted(i, delta)
            if moved is not None:
                neighbors.add(moved)
    return neighbors


def enumerate_lambda_n(n: int, max_first_part: int) -> list[Partition]:
    """
    All partitions with at most n parts and lambda_1 <= max_first_part.

    Ordered by the reversed zero-padded part vector, so shapes with fewer
    rows come first: (n=2, max=2) gives ∅, (1), (2), (1,1), (2,1), (2,2).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if max_first_part < 0:
        return []
    found = []
    for parts in product(range(max_first_part + 1), repeat=n):
        if all(a >= b for a, b in zip(parts, parts[1:])):
            found.append(parts)
    found.sort(key=lambda parts: tuple(reversed(parts)))
    return [Partition(parts) for parts in found]


def enumerate_up_to_weight(n: int, max_weight: int) -> list[Partition]:
    """Partitions in Lambda_n with at most max_weight boxes."""
    return [p for p in enumerate_lambda_n(n, max_weight) if weight(p) <= max_weight]
