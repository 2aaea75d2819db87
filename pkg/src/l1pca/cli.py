"""Command line front end.

Subcommands: ``solve`` on a CSV matrix, ``experiment`` runners,
``verify`` (randomized oracle cross-checks), and ``bench``. Exit codes:
0 success, 1 usage error, 2 numerical contract violation, 3 budget
refusal. Diagnostics go to stderr; identical argv and seeds produce
byte-identical outputs.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, bench, experiments, heuristics, solver_multi, solver_single
from .experiments._report import format_cell, write_csv
from .numerics import BudgetError, RankError, ZeroRankError

METHODS = (
    "auto",
    "exhaustive",
    "rank1",
    "rank2",
    "poly",
    "approx",
    "fixedpoint",
    "greedy",
)

USAGE_EXIT = 1
CONTRACT_EXIT = 2
BUDGET_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE_EXIT)


class UsageError(ValueError):
    pass


def read_matrix_csv(path):
    """Parse a CSV matrix: one row per line, '#' comments, D rows x N columns."""
    rows = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([float(cell) for cell in stripped.split(",")])
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise UsageError(f"{path}: no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise UsageError(f"{path}: ragged rows; matrix must be rectangular")
    m = np.array(rows, dtype=float)
    if not np.all(np.isfinite(m)):
        raise RankError(f"{path}: matrix contains non-finite values")
    return m


def result_to_json(result):
    """Stable JSON document for a SolveResult (floats at full precision)."""
    signs = result.signs
    doc = {
        "method": result.method,
        "k": result.k,
        "metric": result.metric,
        "signs": signs.astype(int).tolist(),
        "basis": result.basis.tolist(),
        "candidates_evaluated": result.candidates_evaluated,
        "ties": result.ties,
        "exact": result.exact,
    }
    if result.trace is not None:
        doc["iterations"] = result.trace.iterations
        doc["converged"] = result.trace.converged
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _dispatch_solve(x, args):
    common = dict(rank_tol=args.rank_tol, budget=args.budget, workers=args.workers)
    if args.method in ("fixedpoint", "greedy"):
        if args.method == "fixedpoint":
            if args.k == 1:
                return heuristics.fixed_point_single(x, rank_tol=args.rank_tol)
            return heuristics.fixed_point_multi(x, args.k, rank_tol=args.rank_tol)
        return heuristics.greedy_deflation(x, args.k, rank_tol=args.rank_tol)
    if args.k == 1:
        return solver_single.solve(x, strategy=args.method, **common)
    if args.method in ("rank1", "rank2", "approx"):
        raise UsageError(f"method {args.method!r} computes a single component; got --k {args.k}")
    return solver_multi.solve_multi(x, args.k, strategy=args.method, **common)


def cmd_solve(args):
    x = read_matrix_csv(args.input)
    result = _dispatch_solve(x, args)
    doc = result_to_json(result)
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
    if args.json or not args.output:
        sys.stdout.write(doc)
    print(
        f"method={result.method} k={result.k} metric={format_cell(result.metric)} "
        f"candidates={result.candidates_evaluated} ties={result.ties}",
        file=sys.stderr,
    )
    return 0


def _out_dir(args):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_experiment_dimred(args):
    config = experiments.DimredConfig(
        seed=args.seed,
        trials=args.trials,
        train_points=args.train_points,
        eval_points=args.eval_points,
        n_out_values=tuple(args.n_out),
    )
    report = experiments.run_dimred(config)
    out = _out_dir(args)
    report.to_csv(out / "dimred.csv")
    sys.stdout.write(report.text())
    return 0


def cmd_experiment_restore(args):
    report = experiments.run_restoration(budget=args.budget, workers=args.workers)
    out = _out_dir(args)
    report.write(out)
    print(
        f"max deviation from reference: l2={format_cell(report.max_dev_l2)} "
        f"l1={format_cell(report.max_dev_l1)} "
        f"(tolerance {experiments.fixtures.PRINT_TOLERANCE})"
    )
    return 0 if report.matches_reference else CONTRACT_EXIT


def cmd_experiment_music(args):
    out = _out_dir(args)
    summary = []
    for trial in range(args.trials):
        config = experiments.DoaConfig(
            seed=args.seed + trial,
            random_phase=not args.literal_model,
            grid_step_deg=args.grid_step,
            workers=args.workers,
        )
        result = experiments.run_doa(config)
        if trial == 0:
            result.l2.to_csv(out / "music_l2.csv")
            result.l1.to_csv(out / "music_l1.csv")
        peaks = sorted(result.l1.top_peaks(2))
        summary.append(
            [
                config.seed,
                result.jammed_snapshot,
                peaks[0] if peaks else float("nan"),
                peaks[1] if len(peaks) > 1 else float("nan"),
                result.l2.power_at(config.jammer_deg),
                result.l1.power_at(config.jammer_deg),
            ]
        )
    write_csv(
        out / "music_summary.csv",
        ["seed", "jammed_snapshot", "l1_peak_low", "l1_peak_high",
         "l2_power_at_jammer", "l1_power_at_jammer"],
        summary,
    )
    print(f"wrote spectra and {len(summary)}-seed summary to {out}")
    return 0


def cmd_experiment_image(args):
    img = experiments.read_pgm(args.image) if args.image else experiments.bundled_image()
    out = _out_dir(args)
    rows = []
    for trial in range(args.trials):
        config = experiments.ImageConfig(
            seed=args.seed + trial,
            tiles_per_instance=args.tiles,
            workers=args.workers,
        )
        report = experiments.run_image(config, img)
        rows.append(
            [config.seed, report.k_effective, report.mae_l2, report.mae_l1,
             report.mse_l2, report.mse_l1]
        )
        if trial == 0:
            shape = img.shape

            def clip(m):
                return np.clip(np.rint(m), 0, 255).astype(np.uint8)

            experiments.write_pgm(out / "image_clean.pgm", img)
            experiments.write_pgm(
                out / "image_occluded.pgm",
                clip(report.occluded[:, 0].reshape(shape)),
            )
            experiments.write_pgm(
                out / "image_recon_l2.pgm",
                clip(report.reconstructed_l2[:, 0].reshape(shape)),
            )
            experiments.write_pgm(
                out / "image_recon_l1.pgm",
                clip(report.reconstructed_l1[:, 0].reshape(shape)),
            )
    write_csv(
        out / "image_summary.csv",
        ["seed", "k_effective", "mae_l2", "mae_l1", "mse_l2", "mse_l1"],
        rows,
    )
    wins = sum(1 for r in rows if r[3] < r[2])
    print(f"l1 mean-absolute-error wins: {wins}/{len(rows)}")
    return 0


def cmd_verify(args):
    failures = 0

    def check(name, ok, detail=""):
        nonlocal failures
        status = "PASS" if ok else "FAIL"
        failures += not ok
        print(f"{status}  {name}{'  ' + detail if detail else ''}")

    rng_seeds = range(args.seed, args.seed + args.trials)

    worst = 0.0
    for s in rng_seeds:
        rng = np.random.default_rng((s, 1))
        x = rng.standard_normal((int(rng.integers(2, 6)), int(rng.integers(4, 11))))
        exh = solver_single.solve_exhaustive(x, workers=args.workers)
        poly = solver_single.solve_poly(x, workers=args.workers)
        worst = max(worst, abs(exh.metric - poly.metric) / exh.metric)
        gap = abs(solver_single.metric_l1(x, poly.basis) - poly.metric) / poly.metric
        worst = max(worst, gap)
    check("single-component oracle + identity", worst <= 1e-9, f"worst gap {worst:.2e}")

    worst = 0.0
    for s in rng_seeds:
        rng = np.random.default_rng((s, 2))
        n = int(rng.integers(4, 8))
        d = int(rng.integers(2, 4))
        x = rng.standard_normal((d, d)) @ rng.standard_normal((d, n))
        exh = solver_multi.solve_multi_exhaustive(x, 2, workers=args.workers)
        poly = solver_multi.solve_multi_poly(x, 2, workers=args.workers)
        worst = max(worst, abs(exh.metric - poly.metric) / exh.metric)
        gap = abs(solver_single.metric_l1(x, poly.basis) - poly.metric) / poly.metric
        worst = max(worst, gap)
    check("multi-component oracle + identity", worst <= 1e-9, f"worst gap {worst:.2e}")

    from .candidates import cardinality_bound, compute_candidates

    counts_ok = True
    for n, d, expect in ((8, 3, 29), (10, 2, 10), (10, 4, 130)):
        got = len(compute_candidates(np.random.default_rng((n, d)).standard_normal((n, d))))
        counts_ok &= got == expect == cardinality_bound(n, d)
    check("candidate cardinality", counts_ok)

    restore = experiments.run_restoration()
    check(
        "restoration fixture",
        restore.matches_reference,
        f"dev l2={restore.max_dev_l2:.2e} l1={restore.max_dev_l1:.2e}",
    )

    print("verify:", "PASS" if failures == 0 else f"{failures} FAILURES")
    return 0 if failures == 0 else CONTRACT_EXIT


def cmd_bench(args):
    rows = bench.bench_grid(reps=args.reps, seed=args.seed, workers=args.workers)
    if args.out_dir:
        out = _out_dir(args)
        write_csv(out / "bench.csv", bench.BENCH_HEADER, rows)
    print(",".join(bench.BENCH_HEADER))
    for row in rows:
        print(",".join(format_cell(v) for v in row))
    if args.speedup:
        rep = bench.bench_speedup(workers=args.workers_speedup, reps=args.reps_speedup)
        cores = os.cpu_count()
        print(
            f"speedup d={rep.d} N={rep.n}: serial {rep.seconds_serial:.3f}s, "
            f"{rep.workers} workers {rep.seconds_parallel:.3f}s -> {rep.speedup:.2f}x "
            f"(machine has {cores} CPUs)"
        )
    return 0


def build_parser():
    parser = _Parser(prog="l1pca", description=__doc__)
    parser.add_argument("--version", action="version", version=f"l1pca {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a CSV matrix (D rows x N sample columns)")
    p.add_argument("--input", required=True, help="CSV matrix path")
    p.add_argument("--k", type=int, default=1, help="number of components")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--rank-tol", type=float, default=1e-10, dest="rank_tol")
    p.add_argument("--budget", type=int, default=solver_single.DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--output", help="write the JSON result to this path")
    p.add_argument("--json", action="store_true", help="print JSON to stdout")
    p.set_defaults(fn=cmd_solve)

    exp = sub.add_parser("experiment", help="run a reproduction experiment")
    esub = exp.add_subparsers(dest="experiment", required=True)

    def common_exp(q, trials):
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--trials", type=int, default=trials)
        q.add_argument("--out-dir", default="l1pca_results", dest="out_dir")
        q.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    q = esub.add_parser("dimred", help="outlier robustness of 1-D reduction")
    common_exp(q, 10_000)
    q.add_argument("--train-points", type=int, default=20, dest="train_points")
    q.add_argument("--eval-points", type=int, default=1000, dest="eval_points")
    q.add_argument("--n-out", type=int, nargs="+", default=list(range(21)), dest="n_out")
    q.set_defaults(fn=cmd_experiment_dimred)

    q = esub.add_parser("restore", help="deterministic restoration fixture")
    q.add_argument("--out-dir", default="l1pca_results", dest="out_dir")
    q.add_argument("--budget", type=int, default=solver_single.DEFAULT_BUDGET)
    q.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    q.set_defaults(fn=cmd_experiment_restore)

    q = esub.add_parser("music", help="jammed direction-of-arrival spectra")
    common_exp(q, 1)
    q.add_argument("--grid-step", type=float, default=0.1, dest="grid_step")
    q.add_argument(
        "--literal-model",
        action="store_true",
        dest="literal_model",
        help="constant source amplitudes instead of per-snapshot signs",
    )
    q.set_defaults(fn=cmd_experiment_music)

    q = esub.add_parser("image", help="reconstruction from occluded copies")
    common_exp(q, 1)
    q.add_argument("--image", help="PGM image path (default: bundled synthetic)")
    q.add_argument("--tiles", type=int, default=3, help="occluded tiles per copy")
    q.set_defaults(fn=cmd_experiment_image)

    p = sub.add_parser("verify", help="randomized oracle equivalence sweep")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="wall-time grid (informational)")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", default=None, dest="out_dir")
    p.add_argument("--speedup", action="store_true", help="also measure worker scaling")
    p.add_argument("--workers-speedup", type=int, default=4, dest="workers_speedup")
    p.add_argument("--reps-speedup", type=int, default=20, dest="reps_speedup")
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"l1pca: error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except BudgetError as exc:
        print(f"l1pca: budget refusal: {exc}", file=sys.stderr)
        return BUDGET_EXIT
    except (RankError, ZeroRankError, ValueError) as exc:
        print(f"l1pca: numerical contract violation: {exc}", file=sys.stderr)
        return CONTRACT_EXIT


if __name__ == "__main__":
    sys.exit(main())
