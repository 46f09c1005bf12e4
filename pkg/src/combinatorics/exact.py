"""
Exact q-Arithmetic
Rational scalars, q-Pochhammer symbols and q-binomial coefficients.

Every quantity in the package is a fractions.Fraction. A QContext pins the
deformation parameter q in [0, 1); caches below are keyed on it.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

ExactScalar = Fraction
RationalLike = Union[int, str, Fraction]


def to_scalar(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction or a string such as '3/4' into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Not a rational number: {value!r}") from exc
    raise ValueError(f"Unsupported scalar type {type(value).__name__}: {value!r}")


def format_scalar(value: Fraction) -> str:
    """Exact text form: '3/8', '-2', '0'."""
    return str(value)


@dataclass(frozen=True)
class QContext:
    """The deformation parameter, 0 <= q < 1."""

    q: Fraction

    def __post_init__(self):
        q = to_scalar(self.q)
        if not (0 <= q < 1):
            raise ValueError(f"q must satisfy 0 <= q < 1, got {q}")
        object.__setattr__(self, "q", q)

    @property
    def classic(self) -> bool:
        return self.q == 0

    def power(self, exponent: int) -> Fraction:
        """q**exponent for exponent >= 0, with 0**0 == 1."""
        if exponent < 0:
            raise ValueError(f"Negative q-exponent {exponent}")
        return self.q ** exponent


@lru_cache(maxsize=None)
def q_pochhammer(ctx: QContext, n: int) -> Fraction:
    """(q;q)_n = (1-q)(1-q^2)...(1-q^n); (q;q)_0 = 1."""
    if n < 0:
        raise ValueError(f"q_pochhammer needs n >= 0, got {n}")
    if n == 0:
        return Fraction(1)
    return q_pochhammer(ctx, n - 1) * (1 - ctx.power(n))


def q_factorial(ctx: QContext, n: int) -> Fraction:
    """n!_q = (q;q)_n / (1-q)^n."""
    return q_pochhammer(ctx, n) / (1 - ctx.q) ** n


@lru_cache(maxsize=None)
def q_binomial(ctx: QContext, n: int, k: int) -> Fraction:
    """
    Gaussian binomial (q;q)_n / ((q;q)_k (q;q)_{n-k}).

    Zero when k < 0 or k > n. At q = 0 every in-range value is 1.
    """
    if n < 0:
        raise ValueError(f"q_binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return Fraction(0)
    return q_pochhammer(ctx, n) / (q_pochhammer(ctx, k) * q_pochhammer(ctx, n - k))


@lru_cache(maxsize=None)
def gaussian_binomial_coefficients(n: int, k: int) -> tuple[int, ...]:
    """
    Integer coefficients of the Gaussian binomial as a polynomial in q.

    Built from [n,k] = [n-1,k-1] + q^k [n-1,k], so it never touches
    q_pochhammer and serves as an independent oracle.
    """
    if n < 0:
        raise ValueError(f"gaussian_binomial_coefficients needs n >= 0, got {n}")
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    left = gaussian_binomial_coefficients(n - 1, k - 1)
    right = gaussian_binomial_coefficients(n - 1, k)
    coefficients = [0] * (k * (n - k) + 1)
    for degree, c in enumerate(left):
        coefficients[degree] += c
    for degree, c in enumerate(right):
        coefficients[degree + k] += c
    return tuple(coefficients)


def evaluate_polynomial(coefficients: Iterable[int], q: Fraction) -> Fraction:
    """Horner evaluation of sum c_d q^d."""
    total = Fraction(0)
    for c in reversed(tuple(coefficients)):
        total = total * q + c
    return total


def check_q_binomial_recurrences(ctx: QContext, n_max: int) -> bool:
    """
    Check the four contiguous relations of the q-binomial for 0 <= k <= n <= n_max:

        binom(n+1,k) = binom(n,k) (1-q^{n+1}) / (1-q^{n-k+1})
        binom(n-1,k) = binom(n,k) (1-q^{n-k}) / (1-q^n)          (n >= 1)
        binom(n,k+1) = binom(n,k) (1-q^{n-k}) / (1-q^{k+1})
        binom(n,k-1) = binom(n,k) (1-q^k) / (1-q^{n-k+1})
    """
    p = ctx.power
    for n in range(n_max + 1):
        for k in range(n + 1):
            b = q_binomial(ctx, n, k)
            if q_binomial(ctx, n + 1, k) != b * (1 - p(n + 1)) / (1 - p(n - k + 1)):
                return False
            if n >= 1 and q_binomial(ctx, n - 1, k) != b * (1 - p(n - k)) / (1 - p(n)):
                return False
            if q_binomial(ctx, n, k + 1) != b * (1 - p(n - k)) / (1 - p(k + 1)):
                return False
            if q_binomial(ctx, n, k - 1) != b * (1 - p(k)) / (1 - p(n - k + 1)):
                return False
    return True
