"""
Symplectic Symmetric Functions
Symplectic Schur functions Sp_lam, their q-deformation P_lam, continuous
q-Hermite polynomials, q-weighted oscillating tableau counts Q_m^lam(n;q),
and the Pieri, eigenrelation and Littlewood identity checks.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from src.combinatorics.exact import QContext, q_binomial, to_scalar
from src.combinatorics.kernels import (
    ParamContext,
    bottom_triples,
    hat_K,
    kappa,
    kernel_L,
    pattern_monomial,
)
from src.combinatorics.partitions import (
    EMPTY,
    Partition,
    as_partition,
    enumerate_lambda_n,
    enumerate_up_to_weight,
    one_box_neighbors,
)
from src.combinatorics.patterns import enumerate_patterns
from src.utils.reports import IdentityReport


def _require_lambda_n(lam: Partition, n: int) -> Partition:
    lam = as_partition(lam)
    if not lam.in_lambda(n):
        raise ValueError(f"{lam} is not in Lambda_{n} (more than {n} parts)")
    return lam


@lru_cache(maxsize=None)
def _sp_schur(n: int, a: tuple[Fraction, ...], lam: Partition) -> Fraction:
    pc = ParamContext(n, a, QContext(Fraction(0)))
    return sum((pattern_monomial(pc, z) for z in enumerate_patterns(lam, n)), Fraction(0))


def sp_schur(pc: ParamContext, lam: Partition) -> Fraction:
    """Sp_lam(a): the sum of a^P over symplectic tableaux of shape lam. Independent of q."""
    return _sp_schur(pc.n, pc.a, _require_lambda_n(lam, pc.n))


def tableau_count(n: int, lam: Partition) -> int:
    """Number of symplectic tableaux of shape lam over [n, n̄]."""
    value = sp_schur(ParamContext(n, (Fraction(1),) * n, QContext(Fraction(0))), lam)
    return int(value)


@lru_cache(maxsize=None)
def _p_function(pc: ParamContext, lam: Partition) -> Fraction:
    return sum(
        (pattern_monomial(pc, z) * kappa(pc, z) for z in enumerate_patterns(lam, pc.n)),
        Fraction(0),
    )


def p_function(pc: ParamContext, lam: Partition) -> Fraction:
    """P_lam(a;q) = sum over patterns of shape lam of a^Z kappa_n(Z)."""
    return _p_function(pc, _require_lambda_n(lam, pc.n))


def p_function_recursive(pc: ParamContext, lam: Partition) -> Fraction:
    """
    P_lam through its bottom block:

        P^(n)_lam = sum_{x ⪯ y ⪯ lam} a_n^{2|y|-|x|-|lam|} kappa^_n(x,y,lam) P^(n-1)_x(a_1..a_{n-1})

    with P^(0) = 1.
    """
    lam = _require_lambda_n(lam, pc.n)
    total = Fraction(0)
    for t in bottom_triples(lam.padded(pc.n)):
        inner = Fraction(1) if pc.n == 1 else p_function_recursive(pc.restricted(), Partition(t.x))
        total += hat_K(pc, lam, t) * inner
    return total


def hermite_coefficients(ctx: QContext, ell: int) -> dict[int, Fraction]:
    """Exponent of a -> coefficient in H_ell: the exponent 2m - ell carries binom(ell, m)_q."""
    if ell < 0:
        raise ValueError(f"Degree must be nonnegative, got {ell}")
    return {2 * m - ell: q_binomial(ctx, ell, m) for m in range(ell + 1)}


def q_hermite(ctx: QContext, ell: int, a) -> Fraction:
    """Continuous q-Hermite polynomial at a = e^{i theta} > 0: sum_m binom(ell,m)_q a^{2m-ell}."""
    a = to_scalar(a)
    if a <= 0:
        raise ValueError(f"q_hermite needs a > 0, got {a}")
    return sum((c * a ** e for e, c in hermite_coefficients(ctx, ell).items()), Fraction(0))


@lru_cache(maxsize=None)
def oscillating_weights(pc: ParamContext, m: int) -> dict[Partition, Fraction]:
    """lam -> Q_m^lam(n;q), the L_n-weighted count of length-m oscillating tableaux ending at lam."""
    if m < 0:
        raise ValueError(f"Length must be nonnegative, got {m}")
    if m == 0:
        return {EMPTY: Fraction(1)}
    weights = defaultdict(Fraction)
    for mu, w in oscillating_weights(pc, m - 1).items():
        for lam in one_box_neighbors(mu, pc.n):
            weights[lam] += w * kernel_L(pc, mu, lam)
    return {lam: w for lam, w in weights.items() if w != 0}


def q_count(pc: ParamContext, m: int, lam: Partition) -> Fraction:
    """Q_m^lam(n;q); at q = 0 the number of oscillating tableaux of length m and shape lam."""
    return oscillating_weights(pc, m).get(as_partition(lam), Fraction(0))


def check_pieri(pc: ParamContext, lam_bound: int) -> IdentityReport:
    """Sp_lam * sum(a_i + 1/a_i) = sum of Sp over the one-box neighbours of lam."""
    report = IdentityReport("pieri")
    for lam in enumerate_lambda_n(pc.n, lam_bound):
        lhs = sp_schur(pc, lam) * pc.normalizer
        rhs = sum((sp_schur(pc, mu) for mu in one_box_neighbors(lam, pc.n)), Fraction(0))
        report.record({"lambda": lam}, lhs, rhs)
    return report


def check_eigenrelation(pc: ParamContext, lam_bound: int) -> IdentityReport:
    """sum_mu L_n(lam, mu) P_mu = sum(a_i + 1/a_i) P_lam."""
    report = IdentityReport("eigenrelation")
    for lam in enumerate_lambda_n(pc.n, lam_bound):
        lhs = sum(
            (kernel_L(pc, lam, mu) * p_function(pc, mu) for mu in one_box_neighbors(lam, pc.n)),
            Fraction(0),
        )
        report.record({"lambda": lam}, lhs, pc.normalizer * p_function(pc, lam))
    return report


def check_littlewood(pc: ParamContext, m: int) -> IdentityReport:
    """(sum a_i + 1/a_i)^m = sum_{|lam| <= m} Q_m^lam(n;q) P_lam; the classic identity at q = 0."""
    report = IdentityReport("littlewood")
    for length in range(m + 1):
        rhs = sum(
            (q_count(pc, length, lam) * p_function(pc, lam) for lam in enumerate_up_to_weight(pc.n, length)),
            Fraction(0),
        )
        report.record({"m": length}, pc.normalizer ** length, rhs)
    return report


def check_hermite_reduction(ctx: QContext, ell_max: int, a) -> IdentityReport:
    """P^(1)_(ell)(a;q) equals the q-Hermite polynomial for ell <= ell_max."""
    report = IdentityReport("q-hermite reduction")
    pc = ParamContext(1, (to_scalar(a),), ctx)
    for ell in range(ell_max + 1):
        report.record({"ell": ell, "a": pc.a[0]}, p_function(pc, Partition((ell,))), q_hermite(ctx, ell, a))
    return report


def check_p_recursion(pc: ParamContext, lam_bound: int) -> IdentityReport:
    """p_function agrees with its bottom-block recursion."""
    report = IdentityReport("P recursion")
    for lam in enumerate_lambda_n(pc.n, lam_bound):
        report.record({"lambda": lam}, p_function(pc, lam), p_function_recursive(pc, lam))
    return report
