"""
Identity Suites
Exhaustive desk-scale checks that tie the modules together (Berele
bijectivity, the q = 0 degeneration, the word-weight identity) and the
registry the command line dispatches `verify` through.
"""

import sys
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict

from src.combinatorics.exact import QContext
from src.combinatorics.kernels import (
    ParamContext,
    check_hat_marginals,
    check_kappa_factorization,
    check_letter_block_consistency,
    kappa,
    kernel_L,
    pattern_monomial,
    verify_intertwining,
)
from src.combinatorics.partitions import enumerate_lambda_n, enumerate_up_to_weight
from src.combinatorics.patterns import (
    classic_insert_pattern,
    enumerate_patterns,
    pattern_to_tableau,
    tableau_to_pattern,
)
from src.combinatorics.qinsert import insert_letter, phi_word_sum, words
from src.combinatorics.symfunc import (
    check_eigenrelation,
    check_hermite_reduction,
    check_littlewood,
    check_p_recursion,
    check_pieri,
    p_function,
    sp_schur,
    tableau_count,
)
from src.combinatorics.tableaux import alphabet, berele_insert, berele_word, enumerate_oscillating, tableau_weight
from src.generators.chain import (
    check_classic_word_law,
    check_markov_laws,
    check_shape_kernel_rows,
    doob_decomposition_check,
)
from src.utils.reports import IdentityReport


def check_bijectivity(n: int, m: int) -> IdentityReport:
    """
    Berele insertion of all (2n)^m words: injective, shape(P) = f^m, and
    sum_lam #tableaux(lam) #oscillating(lam) = (2n)^m.
    """
    report = IdentityReport("bijectivity", counts={"words": (2 * n) ** m})
    seen = {}
    for word in words(n, m):
        tableau, f = berele_word(word, n)
        report.record({"word": [str(letter) for letter in word], "check": "shape(P) = f^m"}, tableau.shape, f.final)
        if (tableau, f) in seen:
            report.record(
                {"word": [str(letter) for letter in word], "collides_with": [str(letter) for letter in seen[(tableau, f)]]},
                Fraction(1),
                Fraction(0),
            )
        seen[(tableau, f)] = word
    census = sum(
        tableau_count(n, lam) * len(enumerate_oscillating(n, m, lam))
        for lam in enumerate_up_to_weight(n, m)
    )
    report.record({"check": "census", "n": n, "m": m}, census, (2 * n) ** m)
    report.record({"check": "distinct pairs", "n": n, "m": m}, len(seen), (2 * n) ** m)
    return report


def check_qzero_equivalence(n: int, bound: int) -> IdentityReport:
    """
    At q = 0 the random cascade is the deterministic one, the deterministic
    cascade is Berele insertion read through patterns, and P_lam = Sp_lam.
    """
    report = IdentityReport("qzero-equivalence")
    classic = ParamContext(n, tuple(Fraction(2 + i) for i in range(n)), QContext(Fraction(0)))
    for lam in enumerate_lambda_n(n, bound):
        for z in enumerate_patterns(lam, n):
            tableau = pattern_to_tableau(z)
            report.record({"pattern": z, "check": "round trip"}, tableau_to_pattern(tableau), z)
            for letter in alphabet(n):
                expected = classic_insert_pattern(z, letter)
                report.record(
                    {"pattern": z, "letter": str(letter)},
                    insert_letter(classic.ctx, z, letter).get(expected),
                    Fraction(1),
                )
                inserted, _ = berele_insert(tableau, letter)
                report.record(
                    {"pattern": z, "letter": str(letter), "check": "berele"},
                    tableau_to_pattern(inserted),
                    expected,
                )
        report.record({"lambda": lam, "check": "P = Sp"}, p_function(classic, lam), sp_schur(classic, lam))
    return report


def check_weight_identity(pc: ParamContext, m: int) -> IdentityReport:
    """sum_w a^w phi_w(Z, f) = a^Z kappa_n(Z) prod_i L_n(f^{i-1}, f^i) whenever z^{2n} = f^m."""
    report = IdentityReport("weight identity")
    table = phi_word_sum(pc.ctx, pc.n, m, pc.weight).entries
    expected = {}
    for f in enumerate_oscillating(pc.n, m):
        rate = Fraction(1)
        for before, after in zip(f.shapes, f.shapes[1:]):
            rate *= kernel_L(pc, before, after)
        for z in enumerate_patterns(f.final, pc.n):
            expected[(z, f)] = pattern_monomial(pc, z) * kappa(pc, z) * rate
    for key in sorted(set(table) | set(expected), key=lambda k: (k[0].key(), [s.parts for s in k[1].shapes])):
        z, f = key
        report.record({"pattern": z, "shapes": f}, table.get(key, Fraction(0)), expected.get(key, Fraction(0)))
    return report


def check_tableau_weights(pc: ParamContext, bound: int) -> IdentityReport:
    """a^Z computed on levels equals a^P on the matching tableau."""
    report = IdentityReport("pattern monomial")
    for lam in enumerate_lambda_n(pc.n, bound):
        for z in enumerate_patterns(lam, pc.n):
            report.record({"pattern": z}, pattern_monomial(pc, z), tableau_weight(pattern_to_tableau(z), pc.a))
    return report


# --- Suite registry ---

@dataclass(frozen=True)
class SuiteSettings:
    pc: ParamContext
    m: int
    bound: int


def _combine(name: str, *reports: IdentityReport) -> IdentityReport:
    combined = IdentityReport(name)
    for report in reports:
        combined.absorb(report)
    return combined


def _doob(settings: SuiteSettings) -> IdentityReport:
    pc = settings.pc
    if pc.q != 0:
        print(f"  note: the Doob factorization concerns the classic chain; evaluating at q = 0 (given q = {pc.q})", file=sys.stderr)
        pc = pc.with_q(0)
    return doob_decomposition_check(pc, settings.bound)


SUITES: Dict[str, Callable[[SuiteSettings], IdentityReport]] = {
    "pieri": lambda s: _combine(
        "pieri", check_pieri(s.pc, s.bound), check_shape_kernel_rows(s.pc, s.bound, "classic")
    ),
    "eigen": lambda s: _combine(
        "eigen",
        check_eigenrelation(s.pc, s.bound),
        check_shape_kernel_rows(s.pc, s.bound, "q"),
        check_p_recursion(s.pc, s.bound),
    ),
    "littlewood": lambda s: check_littlewood(s.pc, s.m),
    "intertwining": lambda s: _combine(
        "intertwining",
        verify_intertwining(s.pc, s.bound),
        check_hat_marginals(s.pc, s.bound),
        check_letter_block_consistency(s.pc, s.bound),
        check_kappa_factorization(s.pc, s.bound),
    ),
    "doob": _doob,
    "qzero-equivalence": lambda s: check_qzero_equivalence(s.pc.n, s.bound),
    "bijectivity": lambda s: _combine(
        "bijectivity", check_bijectivity(s.pc.n, s.m), check_classic_word_law(s.pc, s.m)
    ),
    "weight-identity": lambda s: _combine(
        "weight-identity", check_weight_identity(s.pc, s.m), check_tableau_weights(s.pc, s.bound)
    ),
    "markov": lambda s: check_markov_laws(s.pc, s.m),
    "hermite": lambda s: check_hermite_reduction(s.pc.ctx, s.m, s.pc.a[0]),
}


def run_suite(name: str, settings: SuiteSettings) -> IdentityReport:
    """Run one named suite; raises ValueError for an unknown name."""
    if name not in SUITES:
        raise ValueError(f"Unknown suite {name!r}. Available: {', '.join(SUITES)}")
    return SUITES[name](settings)


def summarize_by_identity(report: IdentityReport) -> Dict[str, int]:
    """Failure counts per sub-identity of a combined report."""
    counts = defaultdict(int)
    for failure in report.failures:
        counts[failure.get("identity", report.name)] += 1
    return dict(counts)
