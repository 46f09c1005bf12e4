"""
Kernel Operators
The shape kernel L_n, the pattern weights kappa_n and a^Z, the kernels
K_n and M_n, their bottom-block versions K^_n and M^_n, and the exact
intertwining checks K_n M_n = L_n K_n and K^_n M^_n = L_n K^_n.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from src.combinatorics.exact import QContext, RationalLike, q_binomial, to_scalar
from src.combinatorics.partitions import (
    Partition,
    as_partition,
    enumerate_lambda_n,
    interlacing_tuples,
    one_box_neighbors,
)
from src.combinatorics.patterns import GtPattern, enumerate_patterns, levels_below
from src.combinatorics.qinsert import InterlacedPair, insert_letter, l_prob, r_prob
from src.combinatorics.tableaux import Letter, alphabet, letter_weight
from src.utils.reports import IdentityReport


@dataclass(frozen=True)
class ParamContext:
    """n, positive weights a_1..a_n and the q-context."""

    n: int
    a: tuple[Fraction, ...]
    ctx: QContext

    def __post_init__(self):
        a = tuple(to_scalar(v) for v in self.a)
        object.__setattr__(self, "a", a)
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if len(a) != self.n:
            raise ValueError(f"Expected {self.n} weights a_1..a_{self.n}, got {len(a)}")
        if any(v <= 0 for v in a):
            raise ValueError(f"Weights must be positive, got {[str(v) for v in a]}")

    @classmethod
    def build(cls, n: int, a: Sequence[RationalLike], q: RationalLike) -> "ParamContext":
        return cls(n, tuple(a), QContext(to_scalar(q)))

    @property
    def q(self) -> Fraction:
        return self.ctx.q

    @property
    def normalizer(self) -> Fraction:
        """sum_i (a_i + 1/a_i)."""
        return sum((v + 1 / v for v in self.a), Fraction(0))

    def restricted(self) -> "ParamContext":
        """The context on the first n-1 letters."""
        return ParamContext(self.n - 1, self.a[:-1], self.ctx)

    def with_q(self, q: RationalLike) -> "ParamContext":
        return ParamContext(self.n, self.a, QContext(to_scalar(q)))

    def weight(self, letter: Letter) -> Fraction:
        return letter_weight(self.a, letter)


@dataclass(frozen=True, order=True)
class BottomTriple:
    """The last three levels (x, y, z) with x ⪯ y ⪯ z, lengths n-1, n, n."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not (len(self.y) == len(self.z) == len(self.x) + 1):
            raise ValueError(f"Triple lengths must be (n-1, n, n), got {self.lengths}")
        for name in ("x", "y", "z"):
            level = getattr(self, name)
            if any(v < 0 for v in level) or any(a < b for a, b in zip(level, level[1:])):
                raise ValueError(f"Level {name}={level} is not a partition")
        if not (interlacing_tuples(self.x, self.y) and interlacing_tuples(self.y, self.z)):
            raise ValueError(f"Triple does not interlace: {self.x} ⪯ {self.y} ⪯ {self.z}")

    @property
    def lengths(self) -> tuple[int, int, int]:
        return len(self.x), len(self.y), len(self.z)

    def to_json(self) -> dict:
        return {"x": list(self.x), "y": list(self.y), "z": list(self.z)}


def bottom_triples(z: Sequence[int]) -> Iterator[BottomTriple]:
    """All triples (x, y, z) of T_n ending in the given bottom level."""
    z = tuple(z)
    for y in levels_below(z, len(z)):
        for x in levels_below(y, len(z) - 1):
            yield BottomTriple(x, y, z)


def bottom_triple_of(pattern: GtPattern) -> BottomTriple:
    n = pattern.n
    return BottomTriple(pattern.level(2 * n - 2), pattern.level(2 * n - 1), pattern.level(2 * n))


# --- Shape kernel ---

def u_plus(ctx: QContext, lam: Sequence[int], i: int) -> Fraction:
    """Rate of lam -> lam + e_i: 1 for i = 1, else 1 - q^{lam_{i-1} - lam_i}."""
    if i == 1:
        return Fraction(1)
    return 1 - ctx.power(lam[i - 2] - lam[i - 1])


def u_minus(ctx: QContext, lam: Sequence[int], i: int, n: int) -> Fraction:
    """Rate of lam -> lam - e_i: 1 - q^{lam_i - lam_{i+1}}, with lam_{n+1} = 0."""
    following = lam[i] if i < n else 0
    return 1 - ctx.power(lam[i - 1] - following)


def kernel_L(pc: ParamContext, lam: Partition, mu: Partition) -> Fraction:
    """L_n(lam, mu): u^+ or u^- when mu = lam ± e_i lies in Lambda_n, else 0."""
    lam, mu = as_partition(lam), as_partition(mu)
    if not lam.in_lambda(pc.n):
        raise ValueError(f"{lam} is not in Lambda_{pc.n}")
    if not mu.in_lambda(pc.n):
        return Fraction(0)
    padded = lam.padded(pc.n)
    for i in range(1, pc.n + 1):
        if lam.shifted(i, +1) == mu:
            return u_plus(pc.ctx, padded, i)
        if lam.shifted(i, -1) == mu:
            return u_minus(pc.ctx, padded, i, pc.n)
    return Fraction(0)


# --- Pattern weights ---

def kappa_hat(ctx: QContext, x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> Fraction:
    """Bottom-block factor: prod_i binom(y_i - y_{i+1}, y_i - x_i) binom(z_i - z_{i+1}, z_i - y_i), then binom(z_n, z_n - y_n)."""
    n = len(z)
    total = Fraction(1)
    for i in range(n - 1):
        total *= q_binomial(ctx, y[i] - y[i + 1], y[i] - x[i])
        total *= q_binomial(ctx, z[i] - z[i + 1], z[i] - y[i])
    total *= q_binomial(ctx, z[n - 1], z[n - 1] - y[n - 1])
    return total


@lru_cache(maxsize=None)
def _kappa(ctx: QContext, z: GtPattern) -> Fraction:
    total = Fraction(1)
    for k in range(1, z.n + 1):
        total *= kappa_hat(ctx, z.level(2 * k - 2), z.level(2 * k - 1), z.level(2 * k))
    return total


def kappa(pc: ParamContext, z: GtPattern) -> Fraction:
    """kappa_n(Z), the product of the bottom-block factors of every pair of levels."""
    return _kappa(pc.ctx, z)


def pattern_monomial(pc: ParamContext, z: GtPattern) -> Fraction:
    """a^Z = prod_i a_i^{2|z^{2i-1}| - |z^{2i}| - |z^{2i-2}|}."""
    total = Fraction(1)
    for i in range(1, z.n + 1):
        exponent = 2 * sum(z.level(2 * i - 1)) - sum(z.level(2 * i)) - sum(z.level(2 * i - 2))
        total *= pc.a[i - 1] ** exponent
    return total


def kernel_K(pc: ParamContext, lam: Partition, z: GtPattern) -> Fraction:
    """K_n(lam, Z) = a^Z kappa_n(Z) when z^{2n} = lam."""
    if z.shape != as_partition(lam):
        return Fraction(0)
    return pattern_monomial(pc, z) * kappa(pc, z)


# --- Pattern kernel ---

@lru_cache(maxsize=None)
def _row_M(pc: ParamContext, z: GtPattern) -> tuple[tuple[GtPattern, Fraction], ...]:
    row = defaultdict(Fraction)
    for letter in alphabet(pc.n):
        weight = pc.weight(letter)
        for z2, p in insert_letter(pc.ctx, z, letter).outcomes:
            row[z2] += weight * p
    return tuple(sorted(row.items()))


def transition_row_M(pc: ParamContext, z: GtPattern) -> dict[GtPattern, Fraction]:
    """Z~ -> M_n(Z, Z~) = sum_l a_l I_l(Z, Z~)."""
    return dict(_row_M(pc, z))


def kernel_M(pc: ParamContext, z: GtPattern, z2: GtPattern) -> Fraction:
    return transition_row_M(pc, z).get(z2, Fraction(0))


# --- Bottom-block kernels ---

def hat_K(pc: ParamContext, lam: Partition, t: BottomTriple) -> Fraction:
    """K^_n(z~, (x,y,z)) = a_n^{2|y| - |x| - |z|} kappa^_n(x,y,z), supported on z = z~."""
    lam = as_partition(lam)
    if Partition(t.z) != lam:
        return Fraction(0)
    exponent = 2 * sum(t.y) - sum(t.x) - sum(t.z)
    return pc.a[-1] ** exponent * kappa_hat(pc.ctx, t.x, t.y, t.z)


hat_kernels = hat_K


def _moved(level: tuple[int, ...], move: Optional[tuple[int, int]]) -> tuple[int, ...]:
    if move is None:
        return level
    i, delta = move
    moved = list(level)
    moved[i - 1] += delta
    return tuple(moved)


def hat_M_row(pc: ParamContext, t: BottomTriple) -> dict[BottomTriple, Fraction]:
    """
    Targets and weights of M^_n from the triple t.

    Each move is given per level as (index, delta) or None. The x-level
    moves carry the rates u^±_{n-1,i}(x); the letters n and n̄ act on
    (y, z) alone. For n = 1 this is the single-level kernel M_1.
    """
    n, ctx = pc.n, pc.ctx
    a_n = pc.a[-1]
    x, y, z = t.x, t.y, t.z
    row = defaultdict(Fraction)

    def add(move_x, move_y, move_z, weight):
        if weight == 0:
            return
        target = BottomTriple(_moved(x, move_x), _moved(y, move_y), _moved(z, move_z))
        row[target] += weight

    def r_zy(i):
        return r_prob(ctx, InterlacedPair(y, z), i)

    def l_zy(i):
        return l_prob(ctx, InterlacedPair(y, z), i)

    def r_yx(i):
        return r_prob(ctx, InterlacedPair(x, y), i)

    def l_yx(i):
        return l_prob(ctx, InterlacedPair(x, y), i)

    def right(i):
        return (i, +1)

    def left(i):
        return (i, -1)

    if n == 1:
        add(None, right(1), right(1), a_n * r_zy(1))
        add(None, None, left(1), a_n * (1 - r_zy(1)))
        add(None, None, right(1), 1 / a_n)
        return dict(row)

    for i in range(1, n):
        up = u_plus(ctx, x, i)
        if up != 0:
            add(right(i), right(i), right(i), r_yx(i) * r_zy(i) * up)
            add(right(i), right(i), right(i + 1), r_yx(i) * (1 - r_zy(i)) * up)
            add(right(i), right(i + 1), right(i + 1), (1 - r_yx(i)) * r_zy(i + 1) * up)
            if i <= n - 2:
                add(right(i), right(i + 1), right(i + 2), (1 - r_yx(i)) * (1 - r_zy(i + 1)) * up)
            else:
                # y_n is suppressed on the diagonal and z_n is pulled left
                add(right(i), None, left(n), (1 - r_yx(i)) * (1 - r_zy(n)) * up)
        down = u_minus(ctx, x, i, n - 1)
        if down != 0:
            add(left(i), left(i), left(i), (1 - l_yx(i)) * (1 - l_zy(i)) * down)
            add(left(i), left(i), left(i + 1), (1 - l_yx(i)) * l_zy(i) * down)
            if i <= n - 2:
                add(left(i), left(i + 1), left(i + 1), l_yx(i) * (1 - l_zy(i + 1)) * down)
                add(left(i), left(i + 1), left(i + 2), l_yx(i) * l_zy(i + 1) * down)
            else:
                add(left(i), left(n), left(n), l_yx(i) * down)

    add(None, right(1), right(1), a_n * r_zy(1))
    add(None, right(1), right(2), a_n * (1 - r_zy(1)))
    add(None, None, right(1), 1 / a_n)
    return dict(row)


def hat_M(pc: ParamContext, t: BottomTriple, t2: BottomTriple) -> Fraction:
    return hat_M_row(pc, t).get(t2, Fraction(0))


# --- Intertwining ---

def _check_pattern_intertwining(pc: ParamContext, bound: int) -> IdentityReport:
    report = IdentityReport("K M = L K")
    for lam in enumerate_lambda_n(pc.n, bound):
        lhs = defaultdict(Fraction)
        for z in enumerate_patterns(lam, pc.n):
            weight = kernel_K(pc, lam, z)
            for z2, m in transition_row_M(pc, z).items():
                lhs[z2] += weight * m
        rhs = defaultdict(Fraction)
        for mu in sorted(one_box_neighbors(lam, pc.n)):
            rate = kernel_L(pc, lam, mu)
            for z2 in enumerate_patterns(mu, pc.n):
                rhs[z2] += rate * kernel_K(pc, mu, z2)
        for z2 in sorted(set(lhs) | set(rhs)):
            report.record({"lambda": lam, "ztilde": z2}, lhs[z2], rhs[z2])
    return report


def _check_hat_intertwining(pc: ParamContext, bound: int) -> IdentityReport:
    report = IdentityReport("K^ M^ = L K^")
    for lam in enumerate_lambda_n(pc.n, bound):
        lhs = defaultdict(Fraction)
        for t in bottom_triples(lam.padded(pc.n)):
            weight = hat_K(pc, lam, t)
            for t2, m in hat_M_row(pc, t).items():
                lhs[t2] += weight * m
        rhs = defaultdict(Fraction)
        for mu in sorted(one_box_neighbors(lam, pc.n)):
            rate = kernel_L(pc, lam, mu)
            for t2 in bottom_triples(mu.padded(pc.n)):
                rhs[t2] += rate * hat_K(pc, mu, t2)
        for t2 in sorted(set(lhs) | set(rhs)):
            report.record({"lambda": lam, "ttilde": t2}, lhs[t2], rhs[t2])
    return report


def verify_intertwining(pc: ParamContext, shape_bound: int, hat_only: bool = False) -> IdentityReport:
    """
    Check K_n M_n = L_n K_n and K^_n M^_n = L_n K^_n for all lam with lam_1 <= shape_bound.

    Both sides are compared on every pattern (resp. triple) reached by either side.
    """
    report = IdentityReport("intertwining")
    if not hat_only:
        report.absorb(_check_pattern_intertwining(pc, shape_bound))
    report.absorb(_check_hat_intertwining(pc, shape_bound))
    return report


def check_hat_marginals(pc: ParamContext, bound: int) -> IdentityReport:
    """Summing M^_n over (y~, z~) leaves u^±_{n-1,i}(x) per x-move and a_n + 1/a_n for x~ = x."""
    report = IdentityReport("bottom-block marginals")
    for lam in enumerate_lambda_n(pc.n, bound):
        for t in bottom_triples(lam.padded(pc.n)):
            sums = defaultdict(Fraction)
            for t2, weight in hat_M_row(pc, t).items():
                sums[t2.x] += weight
            expected = {t.x: pc.a[-1] + 1 / pc.a[-1]}
            for i in range(1, pc.n):
                for delta, rate in ((+1, u_plus(pc.ctx, t.x, i)), (-1, u_minus(pc.ctx, t.x, i, pc.n - 1))):
                    if rate != 0:
                        expected[_moved(t.x, (i, delta))] = rate
            for x2 in sorted(set(sums) | set(expected)):
                report.record({"triple": t, "xtilde": list(x2)}, sums[x2], expected.get(x2, Fraction(0)))
    return report


def check_letter_block_consistency(pc: ParamContext, bound: int) -> IdentityReport:
    """Letters n and n̄ move only the last two levels, exactly as the x-fixed rows of M^_n."""
    report = IdentityReport("letters n, n̄ on the bottom block")
    n = pc.n
    fixed = 2 * n - 2
    for lam in enumerate_lambda_n(n, bound):
        for z in enumerate_patterns(lam, n):
            observed = defaultdict(Fraction)
            upper_moved = Fraction(0)
            for letter in (Letter(n, False), Letter(n, True)):
                for z2, p in insert_letter(pc.ctx, z, letter).outcomes:
                    if z2.levels[:fixed] != z.levels[:fixed]:
                        upper_moved += p
                    observed[bottom_triple_of(z2)] += pc.weight(letter) * p
            report.record({"pattern": z, "check": "upper levels fixed"}, upper_moved, Fraction(0))
            t = bottom_triple_of(z)
            expected = {t2: w for t2, w in hat_M_row(pc, t).items() if t2.x == t.x}
            for t2 in sorted(set(observed) | set(expected)):
                report.record({"pattern": z, "ttilde": t2}, observed[t2], expected.get(t2, Fraction(0)))
    return report


def check_kappa_factorization(pc: ParamContext, bound: int) -> IdentityReport:
    """kappa_n(Z) = kappa_{n-1}(upper levels) * kappa^_n(bottom triple)."""
    report = IdentityReport("kappa factorization")
    for lam in enumerate_lambda_n(pc.n, bound):
        for z in enumerate_patterns(lam, pc.n):
            t = bottom_triple_of(z)
            upper = Fraction(1)
            if pc.n > 1:
                upper = kappa(pc.restricted(), GtPattern(pc.n - 1, z.levels[: 2 * pc.n - 2]))
            report.record({"pattern": z}, kappa(pc, z), upper * kappa_hat(pc.ctx, t.x, t.y, t.z))
    return report
