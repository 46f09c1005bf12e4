"""
Command Line
Insertion, enumeration, identity verification, simulation and q-Hermite
coefficients from one entry point. Run from the repository root:

    python src/cli.py --n 3 --q 0 insert "3' 2 1' 3' 1 2 1"
    python src/cli.py verify littlewood --m 4
    python src/cli.py simulate --n 1 --a 2 --m 3 --runs 100000 --compare

Payloads go to stdout, progress to stderr. Exit codes: 0 pass, 1 identity
failure, 2 usage error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

# Ensure project root is in Python path
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.analyzers.empirical import empirical_vs_exact, export_tables
from src.analyzers.identities import SUITES, SuiteSettings, run_suite, summarize_by_identity
from src.combinatorics.kernels import ParamContext
from src.combinatorics.partitions import Partition, parse_partition
from src.combinatorics.patterns import enumerate_patterns
from src.combinatorics.qinsert import phi_word
from src.combinatorics.symfunc import hermite_coefficients, p_function, q_hermite
from src.combinatorics.tableaux import berele_word, enumerate_oscillating, enumerate_tableaux, parse_word
from src.generators.chain import simulate
from src.utils.config import CliConfig, load_config
from src.utils.reports import display_report, dumps, to_jsonable

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
ENUMERABLE = ("tableaux", "patterns", "oscillating")


def _global_options() -> argparse.ArgumentParser:
    """Shared flags, accepted before or after the subcommand."""
    parent = argparse.ArgumentParser(add_help=False)
    options = parent.add_argument_group("settings (flag > BERELEQ_<NAME> > .env > default)")
    options.add_argument("--n", default=argparse.SUPPRESS, help="alphabet size n (default: 2)")
    options.add_argument("--a", default=argparse.SUPPRESS, help="comma-separated positive rationals a_1..a_n (default: 2,3)")
    options.add_argument("--q", default=argparse.SUPPRESS, help="deformation parameter, 0 <= q < 1 (default: 1/2)")
    options.add_argument("--m", default=argparse.SUPPRESS, help="word or path length (default: 4)")
    options.add_argument("--bound", default=argparse.SUPPRESS, help="largest part of the shapes swept (default: 3)")
    options.add_argument("--runs", default=argparse.SUPPRESS, help="independent simulation runs (default: 10000)")
    options.add_argument("--seed", default=argparse.SUPPRESS, help="unsigned 64-bit seed (default: 7)")
    options.add_argument("--format", default=argparse.SUPPRESS, help="json or text (default: json)")
    options.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS, help="render barred letters as k'")
    options.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no progress on stderr")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _global_options()
    parser = argparse.ArgumentParser(
        prog="bereleq",
        description="Exact symplectic insertion, its q-deformation, and the identities around them",
        parents=[parent],
        allow_abbrev=False,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    insert = commands.add_parser("insert", parents=[parent], allow_abbrev=False,
                                 help="insert a word (tableau at q = 0, weight table at q > 0)")
    insert.add_argument("word", nargs="*", help="letters such as 3' 2 1' (prime = bar)")

    verify = commands.add_parser("verify", parents=[parent], allow_abbrev=False, help="run an identity suite")
    verify.add_argument("suite", choices=sorted(SUITES))

    sim = commands.add_parser("simulate", parents=[parent], allow_abbrev=False,
                              help="stream one trajectory, or compare many runs with the exact laws")
    sim.add_argument("--compare", action="store_true", help="empirical vs exact report over --runs runs")
    sim.add_argument("--output", help="CSV file for the frequency tables (with --compare)")

    enum = commands.add_parser("enumerate", parents=[parent], allow_abbrev=False,
                               help="list tableaux, patterns or oscillating tableaux")
    enum.add_argument("kind", choices=ENUMERABLE)
    enum.add_argument("--shape", help='shape such as "2,1"; optional for oscillating tableaux')

    hermite = commands.add_parser("hermite", parents=[parent], allow_abbrev=False,
                                  help="coefficients of P^(1)_(ell), the continuous q-Hermite polynomial")
    hermite.add_argument("--ell", type=int, help="degree (default: --m)")
    return parser


def _progress(config: CliConfig, message: str) -> None:
    if config.verbose():
        print(message, file=sys.stderr)


def _emit(payload, out: TextIO) -> None:
    print(dumps(payload), file=out)


def _param_context(config: CliConfig) -> ParamContext:
    return ParamContext.build(config.n, config.a, config.q)


# --- Subcommands ---

def cmd_insert(tokens: Sequence[str], config: CliConfig, out: TextIO) -> int:
    word = parse_word(tokens, config.n)
    rendered = [letter.render(config.ascii_only) for letter in word]
    if config.q == 0:
        tableau, f = berele_word(word, config.n)
        if config.format == "text":
            print(tableau.render(config.ascii_only), file=out)
            print(" -> ".join(str(shape) for shape in f.shapes), file=out)
        else:
            _emit({"word": rendered, "tableau": tableau, "shapes": f}, out)
        return EXIT_PASS

    table = phi_word(_param_context(config).ctx, word, config.n)
    if config.format == "text":
        for (z, f), w in table.sorted_items():
            shapes = " -> ".join(str(shape) for shape in f.shapes)
            print(f"{w}\t{z.key()}\t{shapes}", file=out)
        print(f"total\t{table.total()}", file=out)
    else:
        _emit({"word": rendered, "q": config.q, "weights": table, "total": table.total()}, out)
    return EXIT_PASS


def cmd_verify(suite: str, config: CliConfig, out: TextIO) -> int:
    _progress(config, f"--- STARTING SUITE '{suite}' (n={config.n}, q={config.q}, m={config.m}, bound={config.bound}) ---")
    report = run_suite(suite, SuiteSettings(_param_context(config), config.m, config.bound))
    if config.format == "text":
        display_report(report, out)
        for identity, count in sorted(summarize_by_identity(report).items()):
            print(f"  {identity}: {count} failed", file=out)
    else:
        _emit(report, out)
        _progress(config, report.summary_line())
    return EXIT_PASS if report.passed else EXIT_FAILURE


def cmd_simulate(compare: bool, output: Optional[str], config: CliConfig, out: TextIO) -> int:
    pc = _param_context(config)
    if not compare:
        path = simulate(pc, config.m, config.seed)
        for step, (z, shape) in enumerate(zip(path.patterns, path.shapes)):
            letter = path.letters[step - 1].render(config.ascii_only) if step else None
            if config.format == "text":
                print(f"{step}\t{letter or '-'}\t{shape}\t{z.key()}", file=out)
            else:
                line = {"step": step, "letter": letter, "shape": shape, "pattern": z}
                print(json.dumps(to_jsonable(line), ensure_ascii=False), file=out)
        return EXIT_PASS

    report = empirical_vs_exact(pc, config.m, config.runs, config.seed, verbose=config.verbose())
    if config.format == "text":
        print(report.shape_table.to_string(index=False), file=out)
        print(f"TV = {float(report.shape_tv):.6f} (tolerance {report.shape_tolerance:.6f}), "
              f"chi2 = {report.chi2_statistic:.4f}, p = {report.chi2_pvalue:.4f}", file=out)
        for c in report.conditional:
            print(f"pattern | {c.shape}: TV = {float(c.tv):.6f} (tolerance {c.tolerance:.6f}, {c.samples} runs)", file=out)
    else:
        _emit(report, out)
    if output:
        export_tables(report, output)
    return EXIT_PASS


def cmd_enumerate(kind: str, shape_text: Optional[str], config: CliConfig, out: TextIO) -> int:
    shape = parse_partition(shape_text) if shape_text is not None else None
    if kind == "oscillating":
        items = enumerate_oscillating(config.n, config.m, shape)
    elif shape is None:
        raise ValueError(f"enumerate {kind} needs --shape, e.g. --shape 2,1")
    elif not shape.in_lambda(config.n):
        raise ValueError(f"{shape} has more than n = {config.n} parts")
    elif kind == "tableaux":
        items = enumerate_tableaux(shape, config.n)
    else:
        items = enumerate_patterns(shape, config.n)
    _progress(config, f"✓ {len(items)} {kind} found")

    if config.format == "text":
        for item in items:
            if kind == "oscillating":
                print(" -> ".join(str(s) for s in item.shapes), file=out)
            elif kind == "tableaux":
                print(item.render(config.ascii_only) + "\n", file=out)
            else:
                print(item.render() + "\n", file=out)
    else:
        _emit({"kind": kind, "n": config.n, "count": len(items), "items": items}, out)
    return EXIT_PASS


def cmd_hermite(ell: Optional[int], config: CliConfig, out: TextIO) -> int:
    ell = config.m if ell is None else ell
    pc = ParamContext.build(1, config.a[:1], config.q)
    coefficients = hermite_coefficients(pc.ctx, ell)
    value = p_function(pc, Partition((ell,)))
    if value != q_hermite(pc.ctx, ell, pc.a[0]):
        print(f"Error: P^(1)_({ell}) differs from the q-Hermite value at a = {pc.a[0]}", file=sys.stderr)
        return EXIT_FAILURE
    if config.format == "text":
        terms = [f"{c}*a^{e}" for e, c in sorted(coefficients.items())]
        print(" + ".join(terms), file=out)
        print(f"at a = {pc.a[0]}: {value}", file=out)
    else:
        _emit({
            "ell": ell,
            "q": config.q,
            "coefficients": {str(e): c for e, c in sorted(coefficients.items())},
            "a": pc.a[0],
            "value": value,
        }, out)
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        if args.command == "insert":
            return cmd_insert(args.word, config, out)
        if args.command == "verify":
            return cmd_verify(args.suite, config, out)
        if args.command == "simulate":
            return cmd_simulate(args.compare, args.output, config, out)
        if args.command == "enumerate":
            return cmd_enumerate(args.kind, args.shape, config, out)
        return cmd_hermite(args.ell, config, out)
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
