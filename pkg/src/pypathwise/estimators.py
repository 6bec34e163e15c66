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

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats  # type: ignore

from .drift_fields import ScalarField, difference_field
from .dyadic_path import generate_batch
from .exceptions import (
    IntegrabilityError,
    MisalignedWindowError,
    MomentRangeError,
    OddMomentError,
    OversamplingError,
    RegimeWarning,
)
from .kernel_lab import second_moment_oracle
from .logger import logger_decorator
from .occupation import (
    OVERSAMPLING,
    as_point,
    dyadic_sums,
    occupation_integral,
    occupation_integrand,
)
from .random_streams import REPLICA, sub_seeds

Z_99 = 2.576
ENVELOPE_SLACK = 1.2
SHAPE_SLACK = 1.5
# replicas per task hold about this many path nodes
CHUNK_NODES = 2**20
MAX_CHUNK = 256

Cell = Dict[str, Any]


@dataclass(frozen=True)
class EstimateSummary:
    r"""
    The outcome of one Monte Carlo experiment.

    ``half_width`` is the 99% normal-approximation half-width
    :math:`2.576 \sqrt{s^2 / N}` of ``estimate``; ``cells`` holds one record
    per grid point of a sweep and ``constant`` the fitted constant
    :math:`\hat C` where the experiment fits one.
    """

    experiment: str
    field_name: str
    replicas: int
    seed: int
    quad_level: int
    estimate: float
    variance: float
    half_width: float
    constant: Optional[float] = None
    passed: bool = True
    cells: List[Cell] = field(default_factory=list)
    flags: Dict[str, bool] = field(default_factory=dict)


def half_width(variance: float, replicas: int) -> float:
    return Z_99 * math.sqrt(variance / replicas)


def clopper_pearson(
    count: int, trials: int, level: float = 0.99
) -> Tuple[float, float]:
    r"""
    Exact binomial confidence interval for ``count`` successes out of ``trials``.

    :rtype: Tuple[float, float]
    """
    alpha = 1.0 - level
    lower = 0.0
    if count > 0:
        lower = stats.beta.ppf(alpha / 2, count, trials - count + 1)
    upper = 1.0
    if count < trials:
        upper = stats.beta.ppf(1 - alpha / 2, count + 1, trials - count)
    return float(lower), float(upper)


def gaussian_envelope(lam: float, constant: float) -> float:
    r"""
    :math:`2 e^{-\lambda^2 / (2 (1.2 \hat C)^2)}`.
    """
    if lam == 0.0:
        return 2.0
    if constant == 0.0:
        return 0.0
    scale = ENVELOPE_SLACK * constant
    return 2.0 * math.exp(-(lam**2) / (2.0 * scale**2))


def fitted_constant(moment: float, p: int, x_norm: float) -> float:
    r"""
    :math:`\hat C = (\mathbb{E}\rho^p / ((p/2)!\,|x|^p))^{1/p}`, zero when the
    moment or the shift vanishes.
    """
    if moment <= 0.0 or x_norm == 0.0:
        return 0.0
    return (moment / (math.factorial(p // 2) * x_norm**p)) ** (1.0 / p)


def _check_moment(p: int) -> None:
    if p % 2:
        raise OddMomentError(p)
    if not 2 <= p <= 8:
        raise MomentRangeError(p)


class MonteCarloEstimator:
    r"""
    Monte Carlo checks of the occupation estimates over independent paths.

    Replica :math:`i` runs on the path seeded by
    ``sub_seed(seed, REPLICA, i)``. Replicas are processed in fixed-size
    chunks on a thread pool and the per-replica samples are reduced in
    replica order, so results do not depend on the number of workers.

    :param replicas: number of replicas :math:`N`
    :type replicas: int
    :param seed: base seed
    :type seed: int
    :param quad_level: quadrature level :math:`L_q`; paths are generated at
                       this level
    :type quad_level: int
    :param workers: thread pool size, the CPU count by default
    :type workers: int, optional
    """

    def __init__(
        self,
        replicas: int = 10_000,
        seed: int = 1,
        quad_level: int = 12,
        workers: Optional[int] = None,
    ):
        if replicas < 2:
            raise ValueError(f"need at least two replicas, got {replicas}")
        self.replicas = replicas
        self.seed = seed
        self.quad_level = quad_level
        self.workers = workers or os.cpu_count() or 1

    def replica_seeds(self, count: Optional[int] = None) -> np.ndarray:
        return sub_seeds(self.seed, REPLICA, np.arange(count or self.replicas))

    def map_replicas(
        self,
        task: Callable[[np.ndarray], np.ndarray],
        level: int,
        count: Optional[int] = None,
    ) -> np.ndarray:
        r"""
        Apply ``task`` to chunks of replica seeds and stack the results in
        replica order.

        :param task: maps an array of seeds to per-replica results
        :type task: Callable
        :param level: path level, fixes the chunk size
        :type level: int
        :rtype: numpy.ndarray
        """
        seeds = self.replica_seeds(count)
        size = max(1, min(MAX_CHUNK, CHUNK_NODES // 2**level))
        chunks = [seeds[i : i + size] for i in range(0, seeds.size, size)]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            results = list(pool.map(task, chunks))
        return np.concatenate(results, axis=0)

    def _rho_samples(
        self,
        g: ScalarField,
        shifts: Sequence[np.ndarray],
        start: int = 0,
        stop: Optional[int] = None,
    ) -> np.ndarray:
        level = self.quad_level
        origin = np.zeros(g.dimension)

        def task(seeds: np.ndarray) -> np.ndarray:
            values = generate_batch(seeds, g.dimension, level)
            return np.stack(
                [
                    occupation_integral(values, level, g, x, origin, level, start, stop)
                    for x in shifts
                ],
                axis=-1,
            )

        return self.map_replicas(task, level)

    def _moment_cell(self, samples: np.ndarray, p: int) -> Tuple[float, float, float]:
        powers = samples**p
        estimate = float(np.mean(powers))
        variance = float(np.var(powers, ddof=1))
        return estimate, variance, half_width(variance, samples.size)

    def _oracle(self, g: ScalarField, x: np.ndarray) -> Optional[float]:
        if g.profile is None or g.dimension != 1:
            return None
        return second_moment_oracle(difference_field(g, x, np.zeros(1)))

    def _check_shift(self, x: np.ndarray) -> None:
        if np.max(np.abs(x)) > 1.0:
            warnings.warn(
                f"Shift {x.tolist()} lies outside the unit cube.",
                RegimeWarning,
                stacklevel=3,
            )

    @logger_decorator
    def moment_bound(self, g: ScalarField, x, p: int) -> EstimateSummary:
        r"""
        Estimate :math:`\mathbb{E}\rho(x)^p` with
        :math:`\rho(x) = \int_0^1 \{g(t, W(t) + x) - g(t, W(t))\}\,dt` and fit
        :math:`\hat C = (\mathbb{E}\rho^p / ((p/2)!\,|x|^p))^{1/p}`.

        For :math:`p = 2` and one-dimensional step fields the estimate is
        compared with the heat-kernel oracle and passes when it lies within
        three half-widths.

        :param g: the test function
        :type g: ScalarField
        :param x: the shift
        :param p: even moment between 2 and 8
        :type p: int
        :rtype: EstimateSummary
        :raises OddMomentError: for odd ``p``
        :raises MomentRangeError: for ``p`` outside 2..8
        """
        _check_moment(p)
        x_arr = as_point(x, g.dimension)
        self._check_shift(x_arr)
        samples = self._rho_samples(g, [x_arr])[:, 0]
        estimate, variance, hw = self._moment_cell(samples, p)
        x_norm = float(np.linalg.norm(x_arr))
        constant = fitted_constant(estimate, p, x_norm)

        cell: Cell = {
            "x": x_norm,
            "p": p,
            "estimate": estimate,
            "variance": variance,
            "half_width": hw,
            "constant": constant,
        }
        passed = True
        if p == 2:
            oracle = self._oracle(g, x_arr)
            if oracle is not None:
                passed = abs(estimate - oracle) <= 3.0 * hw
                cell["oracle"] = oracle
        cell["passed"] = passed

        self.logger.info(  # type: ignore
            f"For field {g.name} at |x| = {x_norm}, the estimated moment of order "
            f"{p} is {estimate} +/- {hw} and the fitted constant is {constant}."
        )
        return EstimateSummary(
            experiment="moments",
            field_name=g.name,
            replicas=self.replicas,
            seed=self.seed,
            quad_level=self.quad_level,
            estimate=estimate,
            variance=variance,
            half_width=hw,
            constant=constant,
            passed=passed,
            cells=[cell],
        )

    @logger_decorator
    def constant_sweep(
        self, g: ScalarField, p: int, x_grid: Sequence[float]
    ) -> EstimateSummary:
        r"""
        Fit :math:`\hat C(x)` over a grid of shifts along the first axis, on
        one common set of paths.

        The headline constant is the maximum over the grid. The run is
        flagged when :math:`\hat C` grows at every step towards
        :math:`x = 0`, and when :math:`\mathbb{E}\rho^2` fails to be
        non-decreasing in :math:`|x|` beyond the confidence slack.

        :rtype: EstimateSummary
        """
        _check_moment(p)
        norms = sorted((abs(float(v)) for v in x_grid), reverse=True)
        shifts = [self._axis_shift(v, g.dimension) for v in norms]
        samples = self._rho_samples(g, shifts)

        cells = []
        for i, x_norm in enumerate(norms):
            estimate, variance, hw = self._moment_cell(samples[:, i], p)
            second, _, second_hw = self._moment_cell(samples[:, i], 2)
            constant = fitted_constant(estimate, p, x_norm)
            cells.append(
                {
                    "x": x_norm,
                    "p": p,
                    "estimate": estimate,
                    "variance": variance,
                    "half_width": hw,
                    "constant": constant,
                    "second_moment": second,
                    "second_half_width": second_hw,
                }
            )
            self.logger.info(  # type: ignore
                f"For field {g.name} at |x| = {x_norm}, "
                f"the fitted constant is {constant}."
            )

        constants = [c["constant"] for c in cells]
        grows = len(constants) > 1 and all(
            b > a for a, b in zip(constants, constants[1:])
        )
        shrinks = all(
            big["second_moment"] + big["second_half_width"]
            >= small["second_moment"] - small["second_half_width"]
            for big, small in zip(cells, cells[1:])
        )
        headline = max(constants) if constants else 0.0
        return EstimateSummary(
            experiment="constants",
            field_name=g.name,
            replicas=self.replicas,
            seed=self.seed,
            quad_level=self.quad_level,
            estimate=headline,
            variance=0.0,
            half_width=0.0,
            constant=headline,
            passed=not grows,
            cells=cells,
            flags={"constant_grows_towards_zero": grows, "monotone_shrinkage": shrinks},
        )

    @staticmethod
    def _axis_shift(value: float, dimension: int) -> np.ndarray:
        shift = np.zeros(dimension)
        shift[0] = value
        return shift

    @logger_decorator
    def moment_shape(
        self,
        g: ScalarField,
        x_grid: Sequence[float],
        p_grid: Sequence[int] = (2, 4, 6),
    ) -> EstimateSummary:
        r"""
        Fit :math:`\hat C(x)` at :math:`p = 2` and check that the normalised
        ratios :math:`(\mathbb{E}\rho^p / ((p/2)!\,|x|^p))^{1/p}` of the other
        moments stay below :math:`1.5 \hat C(x)`.

        :rtype: EstimateSummary
        """
        for p in p_grid:
            _check_moment(p)
        norms = sorted((abs(float(v)) for v in x_grid), reverse=True)
        shifts = [self._axis_shift(v, g.dimension) for v in norms]
        samples = self._rho_samples(g, shifts)

        cells = []
        passed = True
        for i, x_norm in enumerate(norms):
            second, _, _ = self._moment_cell(samples[:, i], 2)
            base = fitted_constant(second, 2, x_norm)
            for p in p_grid:
                estimate, variance, hw = self._moment_cell(samples[:, i], p)
                ratio = fitted_constant(estimate, p, x_norm)
                ok = ratio <= SHAPE_SLACK * base or ratio == 0.0
                passed = passed and ok
                cells.append(
                    {
                        "x": x_norm,
                        "p": p,
                        "estimate": estimate,
                        "variance": variance,
                        "half_width": hw,
                        "constant": ratio,
                        "fitted_constant": base,
                        "passed": ok,
                    }
                )
                self.logger.info(  # type: ignore
                    f"For field {g.name} at |x| = {x_norm} and p = {p}, the "
                    f"normalised ratio is {ratio} against {SHAPE_SLACK} x {base}."
                )
        headline = max((c["fitted_constant"] for c in cells), default=0.0)
        return EstimateSummary(
            experiment="moment_shape",
            field_name=g.name,
            replicas=self.replicas,
            seed=self.seed,
            quad_level=self.quad_level,
            estimate=headline,
            variance=0.0,
            half_width=0.0,
            constant=headline,
            passed=passed,
            cells=cells,
        )

    @logger_decorator
    def tail_bound(
        self,
        g: ScalarField,
        x,
        window: Tuple[float, float],
        lambdas: Sequence[float],
        constant: Optional[float] = None,
    ) -> EstimateSummary:
        r"""
        Exceedance frequencies of :math:`|\rho(x)| \geq \lambda l^{1/2} |x|`
        over the window :math:`[a, b]`, :math:`l = b - a`, against the
        envelope :math:`2 e^{-\lambda^2 / (2 (1.2 \hat C)^2)}`.

        A cell passes when its frequency is below the envelope plus three
        Clopper–Pearson half-widths. Without ``constant`` the constant is
        fitted first by :meth:`moment_bound` at :math:`p = 2`.

        :rtype: EstimateSummary
        """
        x_arr = as_point(x, g.dimension)
        self._check_shift(x_arr)
        if constant is None:
            constant = self.moment_bound(g, x_arr, 2).constant or 0.0
        a, b = window
        if not 0.0 <= a < b <= 1.0:
            raise MisalignedWindowError(a, b, "need 0 <= a < b <= 1")
        coarse = max(self.quad_level - OVERSAMPLING, 0)
        for end in (a, b):
            if end * 2**coarse != math.floor(end * 2**coarse):
                raise MisalignedWindowError(
                    a, b, f"ends must be grid times of level {coarse}"
                )
        length = b - a
        start = int(a * 2**self.quad_level)
        stop = int(b * 2**self.quad_level)
        samples = np.abs(self._rho_samples(g, [x_arr], start, stop)[:, 0])
        x_norm = float(np.linalg.norm(x_arr))

        cells = []
        passed = True
        for lam in lambdas:
            count = int(np.count_nonzero(samples >= lam * math.sqrt(length) * x_norm))
            frequency = count / samples.size
            _, upper = clopper_pearson(count, samples.size)
            envelope = gaussian_envelope(lam, constant)
            ok = frequency <= envelope + 3.0 * (upper - frequency)
            passed = passed and ok
            cells.append(
                {
                    "x": x_norm,
                    "lambda": lam,
                    "frequency": frequency,
                    "exceedances": count,
                    "upper": upper,
                    "envelope": envelope,
                    "passed": ok,
                }
            )
            self.logger.info(  # type: ignore
                f"For field {g.name} at lambda = {lam}, the exceedance frequency is "
                f"{frequency} against the envelope {envelope}."
            )
        return EstimateSummary(
            experiment="tails",
            field_name=g.name,
            replicas=self.replicas,
            seed=self.seed,
            quad_level=self.quad_level,
            estimate=max((c["frequency"] for c in cells), default=0.0),
            variance=0.0,
            half_width=0.0,
            constant=constant,
            passed=passed,
            cells=cells,
        )

    @logger_decorator
    def l2_functional_bound(self, g: ScalarField, p: float) -> EstimateSummary:
        r"""
        Estimate :math:`\mathbb{E}(\int_0^1 g(t, W(t))\,dt)^2` and report its
        ratio to :math:`\|g\|_p^2`.

        :param g: a field with finite, known :math:`L^p` norm
        :type g: ScalarField
        :param p: exponent above :math:`1 + d/2`
        :type p: float
        :rtype: EstimateSummary
        :raises IntegrabilityError: if :math:`p \leq 1 + d/2` or
                                    :math:`\|g\|_p` is not finite
        """
        if p <= 1.0 + g.dimension / 2.0:
            raise IntegrabilityError(
                f"The exponent p = {p} must exceed 1 + d/2 = {1.0 + g.dimension / 2.0}."
            )
        if g.lp_norm is None or not math.isfinite(g.lp_norm(p)):
            raise IntegrabilityError(
                f"Field {g.name} has no finite L^{p} norm on [0, 1] x R^{g.dimension}."
            )
        norm = g.lp_norm(p)
        level = self.quad_level
        origin = np.zeros(g.dimension)

        def task(seeds: np.ndarray) -> np.ndarray:
            values = generate_batch(seeds, g.dimension, level)
            return occupation_integral(values, level, g, origin, None, level)

        samples = self.map_replicas(task, level)
        estimate, variance, hw = self._moment_cell(samples, 2)
        ratio = estimate / norm**2 if norm > 0.0 else 0.0
        cell: Cell = {
            "p": p,
            "estimate": estimate,
            "variance": variance,
            "half_width": hw,
            "norm": norm,
            "ratio": ratio,
        }
        passed = True
        if g.profile is not None and g.dimension == 1:
            oracle = second_moment_oracle(g.profile)
            passed = abs(estimate - oracle) <= 3.0 * hw
            cell["oracle"] = oracle
        cell["passed"] = passed
        self.logger.info(  # type: ignore
            f"For field {g.name}, the second moment is {estimate} +/- {hw}, "
            f"{ratio} times the squared L^{p} norm."
        )
        return EstimateSummary(
            experiment="l2",
            field_name=g.name,
            replicas=self.replicas,
            seed=self.seed,
            quad_level=self.quad_level,
            estimate=estimate,
            variance=variance,
            half_width=hw,
            constant=ratio,
            passed=passed,
            cells=[cell],
        )

    @logger_decorator
    def dyadic_modulus_sweep(
        self,
        g: ScalarField,
        n_grid: Sequence[int],
        pairs: Optional[Sequence[Tuple[float, float]]] = None,
        shifts: Optional[Sequence[float]] = None,
        frozen_constant: Optional[float] = None,
        flatness: float = 3.0,
    ) -> EstimateSummary:
        r"""
        Per level :math:`n`, the largest normalised moduli

        .. math::
            \frac{|\rho_{nk}(x, y)|}{2^{-n/2} |x - y|
            \{n^{1/2} + (\log^+ (1/|x - y|))^{1/2}\}}
            \quad \text{and} \quad
            \frac{|\sigma_{nk}(x)|}{n^{1/2} 2^{-n/2} (|x| + 2^{-2^n})}

        over all :math:`k`, all paths and a fixed dyadic test set of shifts
        along the first axis. The sweep passes when the per-level maxima vary
        by at most ``flatness`` across levels and stay below
        ``frozen_constant`` when one is given.

        :rtype: EstimateSummary
        :raises OversamplingError: if :math:`L_q < \max n + 6`
        """
        top = max(n_grid)
        if self.quad_level < top + OVERSAMPLING:
            raise OversamplingError(self.quad_level, top)
        if pairs is None:
            pairs = DEFAULT_PAIRS
        if shifts is None:
            shifts = DEFAULT_SHIFTS
        level = self.quad_level
        d = g.dimension
        scales_rho = []
        for x, y in pairs:
            gap = abs(x - y)
            scales_rho.append(
                [
                    0.0
                    if gap == 0.0
                    else 1.0
                    / (
                        2.0 ** (-n / 2)
                        * gap
                        * (math.sqrt(n) + math.sqrt(max(math.log(1.0 / gap), 0.0)))
                    )
                    for n in n_grid
                ]
            )
        scales_sigma = [
            [
                1.0
                / (math.sqrt(n) * 2.0 ** (-n / 2) * (abs(x) + math.ldexp(1.0, -(2**n))))
                for n in n_grid
            ]
            for x in shifts
        ]

        def task(seeds: np.ndarray) -> np.ndarray:
            values = generate_batch(seeds, d, level)
            out = np.zeros((seeds.size, 2, len(n_grid)))
            for j, (x, y) in enumerate(pairs):
                integrand = occupation_integrand(
                    values,
                    level,
                    g,
                    self._axis_shift(x, d),
                    self._axis_shift(y, d),
                    level,
                    0,
                    2**level,
                )
                for i, n in enumerate(n_grid):
                    peak = np.max(np.abs(dyadic_sums(integrand, level, 2**n)), axis=-1)
                    out[:, 0, i] = np.maximum(out[:, 0, i], peak * scales_rho[j][i])
            for j, x in enumerate(shifts):
                integrand = occupation_integrand(
                    values,
                    level,
                    g,
                    self._axis_shift(x, d),
                    np.zeros(d),
                    level,
                    0,
                    2**level,
                )
                for i, n in enumerate(n_grid):
                    peak = np.max(np.abs(dyadic_sums(integrand, level, 2**n)), axis=-1)
                    out[:, 1, i] = np.maximum(out[:, 1, i], peak * scales_sigma[j][i])
            return out

        maxima = np.max(self.map_replicas(task, level), axis=0)
        cells = []
        for i, n in enumerate(n_grid):
            cells.append(
                {
                    "n": n,
                    "rho_modulus": float(maxima[0, i]),
                    "sigma_modulus": float(maxima[1, i]),
                }
            )
            self.logger.info(  # type: ignore
                f"At level {n}, the normalised rho modulus is {maxima[0, i]} "
                f"and the normalised sigma modulus is {maxima[1, i]}."
            )

        constant = float(np.max(maxima)) if maxima.size else 0.0
        passed = True
        for row in maxima:
            if np.max(row) > 0.0:
                passed = passed and np.max(row) <= flatness * np.min(row)
        if frozen_constant is not None:
            passed = passed and constant <= frozen_constant
        return EstimateSummary(
            experiment="dyadic",
            field_name=g.name,
            replicas=self.replicas,
            seed=self.seed,
            quad_level=self.quad_level,
            estimate=constant,
            variance=0.0,
            half_width=0.0,
            constant=constant,
            passed=bool(passed),
            cells=cells,
        )

    @logger_decorator
    def path_sanity(self, level: int, dimension: int = 1) -> EstimateSummary:
        r"""
        Distributional checks of the generated paths: the sample variance of
        :math:`W(1)`, the variance of the level-:math:`L` increments relative
        to :math:`2^{-L}` and the Kolmogorov–Smirnov statistic of the first
        coordinate of :math:`W(1)` against :math:`N(0, 1)`, which passes below
        its asymptotic 1% critical value :math:`1.628 / \sqrt{N}`.

        :rtype: EstimateSummary
        """

        def task(seeds: np.ndarray) -> np.ndarray:
            values = generate_batch(seeds, dimension, level)
            increments = np.diff(values, axis=1)
            return np.stack(
                (values[:, -1, 0], np.mean(increments**2, axis=(1, 2)) * 2.0**level),
                axis=-1,
            )

        samples = self.map_replicas(task, level)
        endpoint = samples[:, 0]
        variance = float(np.var(endpoint, ddof=1))
        spread = float(np.var(endpoint**2, ddof=1))
        increment_ratio = float(np.mean(samples[:, 1]))
        result = stats.kstest(endpoint, "norm")
        critical = 1.628 / math.sqrt(endpoint.size)
        passed = bool(result.statistic <= critical)
        self.logger.info(  # type: ignore
            f"Across {endpoint.size} paths, Var W(1) = {variance}, the increment "
            f"variance ratio is {increment_ratio} and the KS statistic is "
            f"{result.statistic} against {critical}."
        )
        return EstimateSummary(
            experiment="paths",
            field_name="",
            replicas=self.replicas,
            seed=self.seed,
            quad_level=level,
            estimate=variance,
            variance=spread,
            half_width=half_width(spread, endpoint.size),
            passed=passed,
            cells=[
                {
                    "level": level,
                    "endpoint_variance": variance,
                    "increment_variance_ratio": increment_ratio,
                    "ks_statistic": float(result.statistic),
                    "ks_pvalue": float(result.pvalue),
                    "ks_critical": critical,
                    "passed": passed,
                }
            ],
        )


DEFAULT_SHIFTS: Tuple[float, ...] = tuple(2.0**-j for j in range(1, 9))
DEFAULT_PAIRS: Tuple[Tuple[float, float], ...] = tuple(
    [(2.0**-i, 2.0**-j) for i in range(1, 7) for j in range(1, 7) if i < j]
    + [(2.0**-i, -(2.0**-i)) for i in range(1, 7)]
    + [(0.5, 0.5)]
)


def moment_bound(
    g: ScalarField, x, p: int, replicas: int, seed: int, quad_level: int = 12
) -> EstimateSummary:
    r"""
    Shorthand for :meth:`MonteCarloEstimator.moment_bound`.
    """
    return MonteCarloEstimator(replicas, seed, quad_level).moment_bound(g, x, p)


def constant_sweep(
    g: ScalarField,
    p: int,
    x_grid: Sequence[float],
    replicas: int,
    seed: int,
    quad_level: int = 12,
) -> EstimateSummary:
    r"""
    Shorthand for :meth:`MonteCarloEstimator.constant_sweep`.
    """
    return MonteCarloEstimator(replicas, seed, quad_level).constant_sweep(g, p, x_grid)


def tail_bound(
    g: ScalarField,
    x,
    window: Tuple[float, float],
    lambdas: Sequence[float],
    replicas: int,
    seed: int,
    constant: Optional[float] = None,
    quad_level: int = 12,
) -> EstimateSummary:
    r"""
    Shorthand for :meth:`MonteCarloEstimator.tail_bound`.
    """
    return MonteCarloEstimator(replicas, seed, quad_level).tail_bound(
        g, x, window, lambdas, constant
    )


def l2_functional_bound(
    g: ScalarField, p: float, replicas: int, seed: int, quad_level: int = 12
) -> EstimateSummary:
    r"""
    Shorthand for :meth:`MonteCarloEstimator.l2_functional_bound`.
    """
    return MonteCarloEstimator(replicas, seed, quad_level).l2_functional_bound(g, p)


def dyadic_modulus_sweep(
    g: ScalarField, n_grid: Sequence[int], replicas: int, seed: int
) -> EstimateSummary:
    r"""
    Shorthand for :meth:`MonteCarloEstimator.dyadic_modulus_sweep` at
    quadrature level :math:`\max n + 6`.
    """
    quad_level = max(n_grid) + OVERSAMPLING
    return MonteCarloEstimator(replicas, seed, quad_level).dyadic_modulus_sweep(
        g, n_grid
    )


def path_sanity(replicas: int, level: int, seed: int) -> EstimateSummary:
    r"""
    Shorthand for :meth:`MonteCarloEstimator.path_sanity`.
    """
    return MonteCarloEstimator(replicas, seed, level).path_sanity(level)
