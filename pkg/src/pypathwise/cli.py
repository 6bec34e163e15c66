#    Copyright 2024 The pypathwise developers

#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at

#        http://www.apache.org/licenses/LICENSE-2.0

#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

import argparse
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .config import EXPERIMENTS, RunConfig, load_config, validate_config
from .drift_fields import FieldCatalog
from .dyadic_path import DyadicPath
from .estimators import MonteCarloEstimator
from .exceptions import IntegrabilityError, PypathwiseError
from .kernel_lab import B_MASS, HeatKernel, WordEnumerator
from .occupation import OVERSAMPLING, OccupationCalculator
from .random_streams import START, sub_seed
from .report import ReportGenerator, format_value
from .solver import (
    ConvergenceAnalyzer,
    EulerSolver,
    PicardIterator,
    girsanov_transform,
    partition_factory,
    random_admissible_start,
)

EXIT_OK = 0
EXIT_ENVELOPE = 1
EXIT_CONFIG = 2

logger = logging.getLogger("pypathwise.cli")


@dataclass
class Outcome:
    r"""
    The result of one experiment inside a run.
    """

    name: str
    passed: bool
    files: List[Path] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)


class ExperimentRunner:
    r"""
    Runs the experiments of one validated configuration and writes their
    artifacts below ``config.out``.

    :param config: the run configuration
    :type config: RunConfig
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.out = Path(config.out)
        self.reports = ReportGenerator()
        self.catalog = FieldCatalog()

    @property
    def quad_level(self) -> int:
        assert self.config.quad_level is not None
        return self.config.quad_level

    def _estimator(self, quad_level: Optional[int] = None) -> MonteCarloEstimator:
        return MonteCarloEstimator(
            self.config.replicas,
            self.config.seed,
            quad_level or self.quad_level,
            self.config.workers,
        )

    def _write(self, name: str, rows, summary=None, plot=None) -> List[Path]:
        return self.reports.write_table(
            self.out,
            name,
            rows,
            self.config.formats,
            summary,
            plot if self.config.emit_gnuplot else None,
        )

    def paths(self) -> Outcome:
        config = self.config
        summary = self._estimator().path_sanity(config.level, config.dimension)
        rows = self.reports.summary_rows(summary, config.level)
        files = self._write("paths", rows, summary)
        self.out.mkdir(parents=True, exist_ok=True)
        sample = self.out / f"path_{config.seed}.bin"
        DyadicPath.generate(config.seed, config.dimension, config.level).dump(sample)
        files.append(sample)
        statistic = rows[0]["ks_statistic"]
        print(f"paths: KS statistic {statistic:.6g}, passed {summary.passed}")
        return Outcome("paths", summary.passed, files)

    def moments(self) -> Outcome:
        g = self.catalog.scalar(self.config.drift, self.config.dimension)
        estimator = self._estimator()
        summary = estimator.moment_bound(g, self.config.x, self.config.p)
        rows = self.reports.summary_rows(summary, self.quad_level)
        print(
            f"moments: E rho^{self.config.p} = {summary.estimate:.6g} "
            f"+/- {summary.half_width:.3g}, C = {summary.constant:.6g}"
        )
        files = self._write("moments", rows, summary)
        passed = summary.passed
        if self.config.p_grid:
            shape = estimator.moment_shape(g, self.config.x_grid, self.config.p_grid)
            shape_rows = self.reports.summary_rows(shape, self.quad_level)
            print(f"moments: shape over p {self.config.p_grid}, passed {shape.passed}")
            plot = {"x": "x", "y": ["constant", "fitted_constant"], "logscale": "x"}
            files += self._write("moment_shape", shape_rows, shape, plot)
            passed = passed and shape.passed
        return Outcome("moments", passed, files)

    def constants(self) -> Outcome:
        g = self.catalog.scalar(self.config.drift, self.config.dimension)
        summary = self._estimator().constant_sweep(g, self.config.p, self.config.x_grid)
        rows = self.reports.summary_rows(summary, self.quad_level)
        print(f"constants: C* = {summary.constant:.6g}, flags {summary.flags}")
        files = self._write(
            "constants", rows, summary, {"x": "x", "y": ["constant"], "logscale": "x"}
        )
        return Outcome("constants", summary.passed, files)

    def tails(self) -> Outcome:
        g = self.catalog.scalar(self.config.drift, self.config.dimension)
        summary = self._estimator().tail_bound(
            g,
            self.config.x,
            self.config.window,
            self.config.lambda_grid,
            self.config.constant,
        )
        rows = self.reports.summary_rows(summary, self.quad_level)
        print(f"tails: C = {summary.constant:.6g}, passed {summary.passed}")
        files = self._write(
            "tails",
            rows,
            summary,
            {"x": "lambda", "y": ["frequency", "envelope"], "logscale": "y"},
        )
        return Outcome("tails", summary.passed, files)

    def l2(self) -> Outcome:
        g = self.catalog.scalar(self.config.drift, self.config.dimension)
        summary = self._estimator().l2_functional_bound(g, self.config.lp)
        rows = self.reports.summary_rows(summary, self.quad_level)
        print(f"l2: E(int g)^2 = {summary.estimate:.6g}, ratio {summary.constant:.6g}")
        return Outcome("l2", summary.passed, self._write("l2", rows, summary))

    def dyadic(self) -> Outcome:
        g = self.catalog.scalar(self.config.drift, self.config.dimension)
        # under "all" the shared quadrature level may sit below the floor
        quad_level = max(self.quad_level, max(self.config.n_grid) + OVERSAMPLING)
        summary = self._estimator(quad_level).dyadic_modulus_sweep(
            g, self.config.n_grid, frozen_constant=self.config.constant
        )
        rows = self.reports.summary_rows(summary, quad_level)
        print(f"dyadic: C_dyadic = {summary.constant:.6g}, passed {summary.passed}")
        files = self._write(
            "dyadic", rows, summary, {"x": "n", "y": ["rho_modulus", "sigma_modulus"]}
        )
        return Outcome("dyadic", summary.passed, files)

    def euler(self) -> Outcome:
        config = self.config
        drift = self.catalog.drift(config.drift, config.dimension)
        count = config.partition_count
        level = config.level
        if count > 1:
            level = max(level, math.ceil(math.log2(count / config.horizon)))
        path = DyadicPath.generate(config.seed, config.dimension, level)
        partition = partition_factory(
            config.partition_kind,
            count,
            path=path,
            seed=config.seed,
            horizon=config.horizon,
        )
        solver = EulerSolver(path, drift, concatenate=True)
        result = solver.solve(partition)

        steps = np.diff(result.times)
        residual = np.linalg.norm(
            np.diff(result.x, axis=0) - np.diff(result.driving, axis=0), axis=-1
        )
        envelope_ok = bool(np.all(residual <= steps * (1.0 + 1e-9) + 1e-15))
        recovered = girsanov_transform(result, drift)
        round_trip = float(np.max(np.abs(recovered - result.driving)))
        deviation = float(np.max(np.linalg.norm(result.x - result.driving, axis=-1)))
        details: Dict[str, object] = {
            "sup_deviation_from_path": deviation,
            "girsanov_round_trip_error": round_trip,
            "bounded_drift_envelope": envelope_ok,
            "snap_error": result.snap_error,
            "mesh": result.partition.mesh,
        }
        passed = envelope_ok and round_trip <= 1e-9
        files = self._write("euler", self.reports.solve_rows(result), details)
        print(
            f"euler: sup|x_n - W(t_n)| = {deviation:.17g}, "
            f"round trip {round_trip:.3g}"
        )

        if config.study:
            analyzer = ConvergenceAnalyzer(path, drift, config.ref_level)
            study = analyzer.convergence_study()
            comparison = analyzer.partition_independence(count, seed=config.seed)
            study_rows = [
                {
                    "drift": study.drift,
                    "seed": study.seed,
                    "ref_level": study.ref_level,
                    "count": n,
                    "sup_error": e,
                }
                for n, e in zip(study.counts, study.errors)
            ]
            files += self._write(
                "euler_convergence",
                study_rows,
                {"study": study, "partitions": comparison},
                {"x": "count", "y": ["sup_error"], "logscale": "xy"},
            )
            print(
                f"euler: empirical rate {study.rate:.3g}, trend passed {study.passed}, "
                f"partition independence passed {comparison.passed}"
            )
            passed = passed and study.passed and comparison.passed
        return Outcome("euler", passed, files, details)

    def uniqueness(self) -> Outcome:
        config = self.config
        drift = self.catalog.drift(config.drift, config.dimension)
        rows = []
        converged = 0
        total = 0
        for offset in range(config.seed_count):
            seed = config.seed + offset
            path = DyadicPath.generate(seed, config.dimension, config.level)
            iterator = PicardIterator(path, drift, config.level)
            for start in range(config.starts):
                rng = np.random.default_rng(sub_seed(seed, START, start))
                u0 = random_admissible_start(config.level, config.dimension, rng)
                result = iterator.run(u0, config.max_iter, config.tol)
                rows.extend(
                    self.reports.perturbation_rows(result, drift.name, seed, start)
                )
                converged += result.converged
                total += 1
        print(f"uniqueness: {converged} of {total} starts converged")
        plot = {"x": "iteration", "y": ["sup_norm"], "logscale": "y"}
        files = self._write("uniqueness", rows, None, plot)
        details = {"converged": converged}
        return Outcome("uniqueness", converged == total, files, details)

    def chain(self) -> Outcome:
        config = self.config
        g = self.catalog.scalar(config.drift, config.dimension)
        quad_level = max(self.quad_level, config.chain_n + OVERSAMPLING)
        level = max(config.level, quad_level)
        path = DyadicPath.generate(config.seed, config.dimension, level)
        result = OccupationCalculator(path, g, quad_level).euler_chain(
            config.chain_n, config.chain_k, config.chain_r, config.chain_x0
        )
        norms = result.norms
        passed = True
        if config.constant is not None:
            q = np.arange(norms.size)
            growth = (1.0 + config.constant * 2.0 ** (-config.chain_n / 4)) ** q
            envelope = norms[0] * growth + q * 2.0 ** (-quad_level / 2)
            passed = bool(np.all(norms <= envelope))
        rows = [
            {
                "field": g.name,
                "seed": config.seed,
                "level": path.level,
                "quad_level": quad_level,
                "q": q_index,
                "norm": float(norm),
            }
            for q_index, norm in enumerate(norms)
        ]
        print(f"chain: final |x| = {norms[-1]:.6g}, rho sum = {result.rho_sum:.6g}")
        files = self._write(
            "chain", rows, {"rho_sum": result.rho_sum, "in_regime": result.in_regime}
        )
        return Outcome("chain", passed, files, {"rho_sum": result.rho_sum})

    def kernels(self) -> Outcome:
        rows = HeatKernel().scaling_table(self.config.kernel_times)
        mass_ok = all(abs(r["mass_E"] - 1.0) <= 1e-8 for r in rows)
        b_ok = all(abs(r["scaled_mass_B"] - B_MASS) <= 1e-6 for r in rows)
        d_values = [r["scaled_mass_D"] for r in rows]
        d_ok = max(d_values) - min(d_values) <= 1e-6
        print("t,mass_E,scaled_mass_B,scaled_mass_D")
        columns = ("t", "mass_E", "scaled_mass_B", "scaled_mass_D")
        for r in rows:
            print(",".join(format_value(r[c]) for c in columns))
        files = self._write("kernels", rows)
        return Outcome("kernels", mass_ok and b_ok and d_ok, files)

    def words(self) -> Outcome:
        enumerator = WordEnumerator()
        k = self.config.word_length
        count = len(enumerator.allowed_words(k))
        bijection = enumerator.subset_bijection(k)
        print("k,count")
        print(f"{k},{count}")
        expected = 2 ** (k - 1)
        rows = [{"k": k, "count": count, "expected": expected, "bijection": bijection}]
        files = self._write("words", rows)
        return Outcome("words", count == expected and bijection, files)

    def run(self, experiment: str) -> List[Outcome]:
        handlers: Dict[str, Callable[[], Outcome]] = {
            name: getattr(self, name) for name in EXPERIMENTS if name != "all"
        }
        if experiment != "all":
            return [handlers[experiment]()]
        outcomes = []
        for name, handler in handlers.items():
            try:
                outcomes.append(handler())
            except IntegrabilityError as error:
                # fields without a finite L^p norm skip the l2 check
                logger.warning(f"Skipping {name}: {error}")
                outcomes.append(Outcome(name, True, details={"skipped": str(error)}))
        return outcomes


def run(subcommand: str, config: RunConfig) -> int:
    r"""
    Run one subcommand and write its artifacts and the run manifest.

    :param subcommand: one of the experiments or ``all``
    :type subcommand: str
    :param config: validated configuration
    :type config: RunConfig
    :return: 0 when every envelope check passes, 1 otherwise, 2 when an
             input turns out invalid while running
    :rtype: int
    """
    started = time.perf_counter()
    runner = ExperimentRunner(config)
    try:
        outcomes = runner.run(subcommand)
    except PypathwiseError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_CONFIG

    runner.out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "config": config.to_dict(),
        "version": __version__,
        "wall_time": time.perf_counter() - started,
        "experiments": {o.name: {"passed": o.passed, **o.details} for o in outcomes},
        "files": [str(p) for o in outcomes for p in o.files],
    }
    runner.reports.write_manifest(runner.out / "manifest.json", manifest)

    failed = [o.name for o in outcomes if not o.passed]
    if failed:
        print(f"envelope checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_ENVELOPE
    return EXIT_OK


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _options() -> argparse.ArgumentParser:
    options = argparse.ArgumentParser(add_help=False)
    add = options.add_argument
    add("--config", type=Path, help="JSON configuration file; flags override it.")
    add("--seed", type=int)
    add("--replicas", type=int)
    add("--level", type=int, help="Path level L.")
    add("--quad-level", dest="quad_level", type=int, help="Quadrature level L_q.")
    add("--drift", help="Catalog field, e.g. sign, const_0.5, checkerboard_4.")
    add("--dimension", type=int)
    add("--partition", help="Partition as kind:N, e.g. uniform:256.")
    add("--horizon", type=float)
    add("--out", help="Output directory.")
    add("--format", dest="formats", type=lambda s: s.split(","), help="csv,json")
    add("--workers", type=int)
    add("--emit-gnuplot", dest="emit_gnuplot", action="store_const", const=True)
    add("--x", type=float, help="Shift along the first axis.")
    add("--x-grid", dest="x_grid", type=_floats)
    add("--lambdas", dest="lambda_grid", type=_floats)
    add("--n-grid", dest="n_grid", type=_ints)
    add("--p", type=int)
    add("--p-grid", dest="p_grid", type=_ints)
    add("--lp", type=float, help="Exponent of the L^p norm for the l2 experiment.")
    add("--window", type=_floats, help="a,b")
    add("--starts", type=int)
    add("--seeds", dest="seed_count", type=int)
    add("--tol", type=float)
    add("--max-iter", dest="max_iter", type=int)
    add("--ref-level", dest="ref_level", type=int)
    add("--study", action="store_const", const=True)
    add("--k", dest="word_length", type=int)
    add("--times", dest="kernel_times", type=_floats)
    add("--constant", type=float, help="Fitted constant to check against.")
    add("--chain-n", dest="chain_n", type=int)
    add("--chain-k", dest="chain_k", type=int)
    add("--chain-r", dest="chain_r", type=int)
    add("--chain-x0", dest="chain_x0", type=float)
    return options


def build_parser() -> argparse.ArgumentParser:
    r"""
    The ``pypathwise`` argument parser, one subcommand per experiment.
    """
    parser = argparse.ArgumentParser(
        prog="pypathwise",
        description="Pathwise stochastic numerics experiments.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="experiment", required=True)
    options = _options()
    for name in EXPERIMENTS:
        subparsers.add_parser(name, parents=[options])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    r"""
    Console entry point.

    :return: the exit code
    :rtype: int
    """
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k != "config"}
    try:
        document = load_config(args.config) if args.config else None
        config = validate_config(document, overrides)
    except PypathwiseError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_CONFIG
    logger.info(f"Running {config.experiment} with seed {config.seed}.")
    return run(config.experiment, config)
