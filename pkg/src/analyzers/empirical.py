"""
Empirical vs Exact
Runs the q-deformed chain many times, tabulates the final shapes and the
final patterns per shape with pandas, and compares them with the exact
laws nu(lam) = P_lam Q_m^lam / S^m and K_n(lam, .) / P_lam.
"""

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd
from scipy.stats import chisquare

from src.combinatorics.kernels import ParamContext
from src.combinatorics.patterns import enumerate_patterns
from src.generators.chain import SimulationPath, conditional_pattern_law, shape_distribution, simulate_runs

# --- CONFIGURATION ---
TOLERANCE_FACTOR = 3
DECIMALS = 6


def _decimal(value) -> str:
    return f"{float(value):.{DECIMALS}f}"


def tv_tolerance(support_size: int, samples: int) -> float:
    """3 sqrt(k / N): the stated bound a TV distance is compared against."""
    return TOLERANCE_FACTOR * math.sqrt(support_size / samples)


def total_variation(counts: Dict[str, int], exact: Dict[str, Fraction], samples: int) -> Fraction:
    """Half the L1 distance between counts / samples and the exact law, kept exact."""
    keys = set(counts) | set(exact)
    return sum(
        (abs(Fraction(counts.get(k, 0), samples) - exact.get(k, Fraction(0))) for k in keys),
        Fraction(0),
    ) / 2


def _frequency_table(counts: Dict[str, int], exact: Dict[str, Fraction], samples: int, label: str) -> pd.DataFrame:
    keys = list(exact) + sorted(k for k in counts if k not in exact)
    return pd.DataFrame(
        {
            label: keys,
            "count": [counts.get(k, 0) for k in keys],
            "empirical": [_decimal(Fraction(counts.get(k, 0), samples)) for k in keys],
            "exact": [str(exact.get(k, Fraction(0))) for k in keys],
        }
    )


@dataclass
class ConditionalTable:
    """Final patterns observed on the runs that ended at one shape."""

    shape: str
    samples: int
    table: pd.DataFrame
    tv: Fraction
    tolerance: float

    @property
    def within_tolerance(self) -> bool:
        return self.tv <= self.tolerance

    def to_json(self) -> Dict[str, Any]:
        return {
            "shape": self.shape,
            "samples": self.samples,
            "tv": _decimal(self.tv),
            "tolerance": _decimal(self.tolerance),
            "within_tolerance": self.within_tolerance,
            "table": self.table.to_dict(orient="records"),
        }


@dataclass
class EmpiricalReport:
    n: int
    m: int
    runs: int
    seed: int
    shape_table: pd.DataFrame
    shape_tv: Fraction
    shape_tolerance: float
    chi2_statistic: float
    chi2_pvalue: float
    conditional: List[ConditionalTable] = field(default_factory=list)

    @property
    def within_tolerance(self) -> bool:
        return self.shape_tv <= self.shape_tolerance and all(c.within_tolerance for c in self.conditional)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "runs": self.runs,
            "seed": self.seed,
            "shape_tv": _decimal(self.shape_tv),
            "shape_tolerance": _decimal(self.shape_tolerance),
            "chi2_statistic": _decimal(self.chi2_statistic),
            "chi2_pvalue": _decimal(self.chi2_pvalue),
            "within_tolerance": self.within_tolerance,
            "shapes": self.shape_table.to_dict(orient="records"),
            "conditional": [c.to_json() for c in self.conditional],
        }


def _chi_square(counts: Dict[str, int], exact: Dict[str, Fraction], runs: int) -> tuple[float, float]:
    if any(k not in exact for k in counts):
        return math.inf, 0.0
    if len(exact) < 2:
        return 0.0, 1.0
    observed = [counts.get(k, 0) for k in exact]
    expected = [float(p) * runs for p in exact.values()]
    result = chisquare(observed, f_exp=expected)
    return float(result.statistic), float(result.pvalue)


def _conditional_table(pc: ParamContext, shape, paths: List[SimulationPath]) -> ConditionalTable:
    frame = pd.DataFrame({"pattern": [p.final_pattern.key() for p in paths]})
    counts = {k: int(v) for k, v in frame["pattern"].value_counts().items()}
    exact = {z.key(): conditional_pattern_law(pc, shape, z) for z in enumerate_patterns(shape, pc.n)}
    exact = {k: v for k, v in exact.items() if v != 0}
    samples = len(paths)
    return ConditionalTable(
        shape=str(shape),
        samples=samples,
        table=_frequency_table(counts, exact, samples, "pattern"),
        tv=total_variation(counts, exact, samples),
        tolerance=tv_tolerance(len(exact), samples),
    )


def empirical_vs_exact(pc: ParamContext, m: int, runs: int, seed: int, verbose: bool = False) -> EmpiricalReport:
    """
    Simulate `runs` independent paths of length m and compare the empirical
    final-shape law with nu, and for every observed shape the empirical
    pattern law with K_n(lam, .) / P_lam.
    """
    if verbose:
        print(f"--- SIMULATING {runs} RUNS (n={pc.n}, m={m}, q={pc.q}) ---", file=sys.stderr)
    paths = simulate_runs(pc, m, runs, seed, verbose)

    nu = shape_distribution(pc, m)
    exact = {str(lam): p for lam, p in nu.items()}
    frame = pd.DataFrame({"shape": [str(p.final_shape) for p in paths]})
    counts = {k: int(v) for k, v in frame["shape"].value_counts().items()}
    statistic, pvalue = _chi_square(counts, exact, runs)

    by_shape = {}
    for path in paths:
        by_shape.setdefault(path.final_shape, []).append(path)
    conditional = [_conditional_table(pc, lam, by_shape[lam]) for lam in sorted(by_shape)]

    report = EmpiricalReport(
        n=pc.n,
        m=m,
        runs=runs,
        seed=seed,
        shape_table=_frequency_table(counts, exact, runs, "shape"),
        shape_tv=total_variation(counts, exact, runs),
        shape_tolerance=tv_tolerance(len(exact), runs),
        chi2_statistic=statistic,
        chi2_pvalue=pvalue,
        conditional=conditional,
    )
    if verbose:
        print(f"✓ shape TV = {_decimal(report.shape_tv)} (tolerance {_decimal(report.shape_tolerance)})", file=sys.stderr)
    return report


def export_tables(report: EmpiricalReport, output_file: str) -> bool:
    """
    Write the shape table and every conditional table to one CSV.

    Returns:
        bool: True if successful
    """
    frames = [report.shape_table.rename(columns={"shape": "outcome"}).assign(table="shape")]
    for c in report.conditional:
        frames.append(c.table.rename(columns={"pattern": "outcome"}).assign(table=f"pattern | {c.shape}"))
    try:
        path = Path(output_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.concat(frames, ignore_index=True)[["table", "outcome", "count", "empirical", "exact"]].to_csv(
            path, index=False, encoding="utf-8"
        )
        print(f"✓ Frequency tables exported to '{output_file}'", file=sys.stderr)
        return True
    except OSError as e:
        print(f"Error exporting tables: {e}", file=sys.stderr)
        return False
