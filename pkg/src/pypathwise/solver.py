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
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .drift_fields import DriftField
from .dyadic_path import MAX_LEVEL, DyadicPath
from .exceptions import (
    InadmissibleStartError,
    InsufficientPathLevelError,
    InvalidPartitionError,
    UnknownPartitionKindError,
)
from .logger import logger_decorator
from .random_streams import PARTITION, TIME_BLOCK, sub_seed

_ADMISSIBLE_SLACK = 1e-12
DEFAULT_GRID_LEVEL = 18


@dataclass(frozen=True)
class Partition:
    r"""
    A strictly increasing time grid :math:`0 = t_0 < t_1 < \cdots < t_N = T`.

    :param times: the grid times
    :type times: numpy.ndarray
    :param kind: how the partition was built
    :type kind: str
    """

    times: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        if times.ndim != 1 or times.size < 2:
            raise InvalidPartitionError("a partition needs at least two times")
        if times[0] != 0.0:
            raise InvalidPartitionError(f"the first time is {times[0]}, not 0")
        if np.any(np.diff(times) <= 0.0):
            raise InvalidPartitionError("times must increase strictly")
        object.__setattr__(self, "times", times)

    @property
    def mesh(self) -> float:
        r"""
        :math:`\delta(P) = \max_n (t_n - t_{n-1})`, recomputed from the times.
        """
        return float(np.max(np.diff(self.times)))

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def size(self) -> int:
        return self.times.size - 1

    @classmethod
    def uniform(cls, count: int, horizon: float = 1.0) -> "Partition":
        if count < 1:
            raise InvalidPartitionError(f"need at least one step, got {count}")
        return cls(np.arange(count + 1) * (horizon / count), "uniform")


@dataclass(frozen=True)
class SolveResult:
    r"""
    A discrete Euler solution :math:`x_0, \ldots, x_N` on a snapped partition.
    """

    partition: Partition
    x: np.ndarray
    driving: np.ndarray
    drift: str
    seed: int
    level: int
    snap_error: float
    scheme: str = "euler"

    @property
    def times(self) -> np.ndarray:
        return self.partition.times


@dataclass(frozen=True)
class PerturbationResult:
    r"""
    The Picard iterates of the perturbation equation on a level-:math:`n` grid.
    """

    level: int
    iterates: List[np.ndarray] = field(repr=False)
    sup_norms: List[float]
    converged: bool
    tol: float

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1


@dataclass(frozen=True)
class ConvergenceStudy:
    r"""
    Sup-errors of uniform Euler solutions against a fine reference.

    ``worst_inversion`` is the largest ratio by which the error grows from
    one step count to the next, 1 when it never grows.
    """

    drift: str
    seed: int
    ref_level: int
    counts: Tuple[int, ...]
    errors: Tuple[float, ...]
    rate: float
    inversions: int
    worst_inversion: float
    passed: bool


@dataclass(frozen=True)
class PartitionComparison:
    r"""
    Mutual sup-distances of solutions on partitions of matched mesh order.
    """

    drift: str
    seed: int
    count: int
    meshes: Dict[str, float]
    self_error: float
    self_errors: Dict[int, float]
    distances: Dict[Tuple[str, str], float]
    passed: bool


def snap_to_grid(partition: Partition, level: int) -> Tuple[np.ndarray, float]:
    r"""
    Snap partition times to the level-``level`` dyadic grid.

    :return: grid indices and the largest snap distance
    :rtype: Tuple[numpy.ndarray, float]
    :raises InvalidPartitionError: if two times collapse onto one grid node
    """
    scaled = partition.times * 2.0**level
    indices = np.rint(scaled).astype(np.int64)
    if np.any(np.diff(indices) <= 0):
        raise InvalidPartitionError(
            f"partition is finer than the level-{level} grid of the path"
        )
    snap_error = float(np.max(np.abs(indices - scaled)) * 2.0**-level)
    return indices, snap_error


class EulerSolver:
    r"""
    Pathwise Euler scheme for :math:`dx = f(t, x)\,dt + dW`, :math:`x(0) = 0`,
    on one fixed Brownian path and arbitrary partitions.

    The recursion

    .. math::
        x_{n+1} = x_n + W(t_{n+1}) - W(t_n) + (t_{n+1} - t_n) f(t_n, x_n)

    is carried out on :math:`u_n = x_n - W(t_n)`, so that
    :math:`u_{n+1} = u_n + (t_{n+1} - t_n) f(t_n, W(t_n) + u_n)`.

    :param path: the driving path on [0, 1]
    :type path: DyadicPath
    :param drift: the drift :math:`f`
    :type drift: DriftField
    :param concatenate: extend the path past time 1 by independent unit
                        blocks derived from the path seed
    :type concatenate: bool
    """

    def __init__(self, path: DyadicPath, drift: DriftField, concatenate: bool = False):
        if drift.dimension != path.dimension:
            raise InvalidPartitionError(
                f"drift dimension {drift.dimension} differs from "
                f"path dimension {path.dimension}"
            )
        self.path = path
        self.drift = drift
        self.concatenate = concatenate

    def driving_values(self, horizon: float) -> np.ndarray:
        r"""
        Path values on the grid of :math:`[0, T]`, concatenating blocks for
        :math:`T > 1`.

        :rtype: numpy.ndarray
        """
        if horizon <= 1.0:
            return self.path.values
        if not self.concatenate:
            raise InvalidPartitionError(
                f"horizon {horizon} exceeds 1 and block concatenation is disabled"
            )
        blocks = [self.path.values]
        offset = self.path.values[-1]
        for b in range(1, math.ceil(horizon)):
            block = DyadicPath.generate(
                sub_seed(self.path.seed, TIME_BLOCK, b),
                self.path.dimension,
                self.path.level,
            )
            blocks.append(block.values[1:] + offset)
            offset = blocks[-1][-1]
        return np.concatenate(blocks, axis=0)

    @logger_decorator
    def solve(self, partition: Partition) -> SolveResult:
        r"""
        Run the Euler recursion on ``partition``.

        Partition times are snapped to the path grid first; the snap distance
        is recorded in the result.

        :param partition: the time grid
        :type partition: Partition
        :rtype: SolveResult
        :raises InvalidPartitionError: for horizons past 1 without
                                       concatenation, or partitions finer
                                       than the path grid
        """
        values = self.driving_values(partition.horizon)
        indices, snap_error = snap_to_grid(partition, self.path.level)
        if indices[-1] >= values.shape[0]:
            raise InvalidPartitionError("partition runs past the driving path")
        times = indices * self.path.spacing
        driving = values[indices]
        steps = np.diff(times)

        u = np.zeros_like(driving)
        for n in range(steps.size):
            u[n + 1] = u[n] + steps[n] * self.drift.evaluate(
                times[n], driving[n] + u[n]
            )
        x = driving + u

        self.logger.info(  # type: ignore
            f"Euler solve for drift {self.drift.name} on a {partition.kind} "
            f"partition with {steps.size} steps: mesh {float(np.max(steps))}, "
            f"snap error {snap_error}."
        )
        return SolveResult(
            partition=Partition(times, partition.kind),
            x=x,
            driving=driving,
            drift=self.drift.name,
            seed=self.path.seed,
            level=self.path.level,
            snap_error=snap_error,
        )

    def interpolant(self, result: SolveResult, level: int) -> np.ndarray:
        r"""
        The continuous Euler interpolant
        :math:`x(t) = x_n + W(t) - W(t_n) + (t - t_n) f(t_n, x_n)`,
        :math:`t_n \leq t < t_{n+1}`, on the level-``level`` grid of
        :math:`[0, T]`.

        :rtype: numpy.ndarray
        """
        if level > self.path.level:
            raise InsufficientPathLevelError(self.path.level, level)
        values = self.driving_values(result.partition.horizon)
        stride = 2 ** (self.path.level - level)
        count = int(round(result.partition.horizon * 2**level))
        grid = np.arange(count + 1) * 2.0**-level
        w = values[: count * stride + 1 : stride]
        left = np.searchsorted(result.times, grid, side="right") - 1
        left = np.minimum(left, result.times.size - 2)
        slopes = self.drift.evaluate(result.times[:-1], result.x[:-1])
        return (
            result.x[left]
            + w
            - result.driving[left]
            + (grid - result.times[left])[:, None] * slopes[left]
        )


def euler(path: DyadicPath, drift: DriftField, partition: Partition) -> SolveResult:
    r"""
    Shorthand for :meth:`EulerSolver.solve`; horizons past 1 use block
    concatenation.
    """
    return EulerSolver(path, drift, concatenate=True).solve(partition)


def euler_interpolant(
    path: DyadicPath, drift: DriftField, result: SolveResult, level: int
) -> np.ndarray:
    r"""
    Shorthand for :meth:`EulerSolver.interpolant`.
    """
    return EulerSolver(path, drift, concatenate=True).interpolant(result, level)


def girsanov_transform(result: SolveResult, drift: DriftField) -> np.ndarray:
    r"""
    Recover the driving path from a solution,
    :math:`W'(t_n) = x_n - \sum_{m<n} (t_{m+1} - t_m) f(t_m, x_m)`,
    with the same left-endpoint rule as the Euler scheme.

    :param result: an Euler solution
    :type result: SolveResult
    :param drift: the drift it was computed with
    :type drift: DriftField
    :return: values of shape ``(N + 1, d)``
    :rtype: numpy.ndarray
    """
    steps = np.diff(result.times)
    slopes = drift.evaluate(result.times[:-1], result.x[:-1])
    integral = np.zeros_like(result.x)
    for n in range(steps.size):
        integral[n + 1] = integral[n] + steps[n] * slopes[n]
    return result.x - integral


def _grid_level(path: Optional[DyadicPath], level: Optional[int]) -> int:
    if path is not None:
        return path.level
    return DEFAULT_GRID_LEVEL if level is None else min(level, MAX_LEVEL)


def _adversarial_extrema(path: DyadicPath, count: int) -> np.ndarray:
    # half the points form a uniform skeleton, the rest chase the running maximum
    size = 2**path.level
    skeleton_count = max(count // 2, 1)
    if size % skeleton_count:
        raise InvalidPartitionError(
            f"{count} points do not fit the level-{path.level} grid"
        )
    skeleton = np.arange(skeleton_count + 1) * (size // skeleton_count)
    extra = count - skeleton_count

    first = path.values[:, 0]
    running = np.maximum.accumulate(first)
    records = np.flatnonzero(np.r_[True, first[1:] > running[:-1]])
    chosen = set(skeleton.tolist())
    picked = 0
    for index in records[::-1]:
        if picked == extra:
            break
        if int(index) not in chosen:
            chosen.add(int(index))
            picked += 1
    peak = int(np.argmax(first))
    offset = 1
    while picked < extra and offset <= size:
        for index in (peak - offset, peak + offset):
            if picked < extra and 0 <= index <= size and index not in chosen:
                chosen.add(index)
                picked += 1
        offset += 1
    return np.array(sorted(chosen))


def partition_factory(
    kind: str,
    count: int,
    path: Optional[DyadicPath] = None,
    seed: int = 0,
    level: Optional[int] = None,
    horizon: float = 1.0,
) -> Partition:
    r"""
    Build a partition with ``count`` steps.

    ``uniform`` gives :math:`t_n = nT/N`; ``random_dyadic`` draws sorted
    distinct grid points from a seeded generator; ``adversarial_extrema``
    is an anticipating partition that spends half its points on a uniform
    skeleton and the other half on the record times of the running maximum
    of the first coordinate of ``path``, filling up around the global
    maximum when there are too few records.

    :param kind: ``uniform``, ``random_dyadic`` or ``adversarial_extrema``
    :type kind: str
    :param count: number of steps :math:`N`
    :type count: int
    :param path: the path, required for ``adversarial_extrema``; its level
                 fixes the grid the points are drawn from
    :type path: DyadicPath, optional
    :param seed: seed for ``random_dyadic``
    :type seed: int
    :param level: grid level when no path is given
    :type level: int, optional
    :param horizon: final time :math:`T`
    :type horizon: float
    :rtype: Partition
    :raises UnknownPartitionKindError: for other kinds
    """
    if count < 1:
        raise InvalidPartitionError(f"need at least one step, got {count}")
    if kind == "uniform":
        return Partition.uniform(count, horizon)

    grid_level = _grid_level(path, level)
    if kind == "random_dyadic":
        size = int(round(horizon * 2**grid_level))
        if count > size:
            raise InvalidPartitionError(
                f"{count} steps do not fit the level-{grid_level} grid"
            )
        rng = np.random.default_rng(sub_seed(seed, PARTITION, count))
        interior = rng.choice(np.arange(1, size), size=count - 1, replace=False)
        indices = np.concatenate(([0], np.sort(interior), [size]))
        return Partition(indices * 2.0**-grid_level, kind)

    if kind == "adversarial_extrema":
        if path is None:
            raise InvalidPartitionError("adversarial_extrema needs the path")
        if horizon != 1.0:
            raise InvalidPartitionError("adversarial_extrema lives on [0, 1]")
        indices = _adversarial_extrema(path, count)
        return Partition(indices * path.spacing, kind)

    raise UnknownPartitionKindError(kind)


def random_admissible_start(
    level: int, dimension: int, rng: np.random.Generator
) -> np.ndarray:
    r"""
    A random grid function :math:`u` with :math:`u(0) = 0`,
    :math:`|u| \leq 1` and :math:`|u(s) - u(t)| \leq |s - t|`.

    Slopes are constant on a random number of blocks and the result is
    scaled by a random amplitude.

    :rtype: numpy.ndarray
    """
    size = 2**level
    blocks = int(rng.integers(1, min(64, size) + 1))
    edges = np.sort(rng.choice(np.arange(1, size), size=blocks - 1, replace=False))
    lengths = np.diff(np.concatenate(([0], edges, [size])))
    slopes = rng.uniform(-1.0, 1.0, size=(blocks, dimension)) / math.sqrt(dimension)
    steps = np.repeat(slopes, lengths, axis=0) * 2.0**-level
    u = np.concatenate((np.zeros((1, dimension)), np.cumsum(steps, axis=0)))
    peak = float(np.max(np.linalg.norm(u, axis=-1)))
    amplitude = rng.uniform(0.0, 1.0)
    return u * (amplitude / max(peak, 1.0))


def _admissible(u: np.ndarray, level: int, dimension: int) -> np.ndarray:
    size = 2**level
    u = np.asarray(u, dtype=np.float64)
    if u.ndim == 1:
        u = u[:, None]
    if u.shape[1] != dimension:
        u = np.broadcast_to(u, (u.shape[0], dimension)).copy()
    if u.shape[0] != size + 1:
        raise InadmissibleStartError(
            f"expected {size + 1} grid values, got {u.shape[0]}"
        )
    if np.any(u[0] != 0.0):
        raise InadmissibleStartError("u(0) must be 0")
    if np.max(np.linalg.norm(u, axis=-1)) > 1.0 + _ADMISSIBLE_SLACK:
        raise InadmissibleStartError("|u| must not exceed 1")
    jumps = np.linalg.norm(np.diff(u, axis=0), axis=-1)
    if np.max(jumps) > 2.0**-level * (1.0 + 1e-9):
        raise InadmissibleStartError("u must be Lipschitz with constant 1")
    return u


class PicardIterator:
    r"""
    Picard iteration for the perturbation equation

    .. math::
        u(t) = \int_0^t \{f(s, W(s) + u(s)) - f(s, W(s))\}\,ds

    on the level-:math:`n` grid with the left-endpoint rule. Plain iteration
    without relaxation; failing to converge is a reported outcome.

    :param path: the driving path, at level at least ``level``
    :type path: DyadicPath
    :param drift: the drift :math:`f`
    :type drift: DriftField
    :param level: grid level :math:`n`
    :type level: int
    """

    def __init__(self, path: DyadicPath, drift: DriftField, level: int):
        if path.level < level:
            raise InsufficientPathLevelError(path.level, level)
        self.path = path
        self.drift = drift
        self.level = level
        stride = 2 ** (path.level - level)
        self.w = path.values[::stride]
        self.times = np.arange(2**level) * 2.0**-level
        self.base = drift.evaluate(self.times, self.w[:-1])

    def step(self, u: np.ndarray) -> np.ndarray:
        r"""
        One application of the integral map.

        :rtype: numpy.ndarray
        """
        shifted = self.drift.evaluate(self.times, self.w[:-1] + u[:-1])
        sums = np.cumsum(shifted - self.base, axis=0) * 2.0**-self.level
        return np.concatenate((np.zeros((1, u.shape[1])), sums))

    @logger_decorator
    def run(
        self,
        u0: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]],
        max_iter: int = 200,
        tol: float = 1e-3,
    ) -> PerturbationResult:
        r"""
        Iterate from ``u0`` until the sup-norm drops below ``tol`` or
        ``max_iter`` iterations have run.

        :param u0: admissible start, as grid values or a function of time
        :type u0: numpy.ndarray or Callable
        :param max_iter: iteration cap
        :type max_iter: int
        :param tol: convergence threshold on :math:`\sup |u|`
        :type tol: float
        :rtype: PerturbationResult
        :raises InadmissibleStartError: if ``u0`` is outside the admissible class
        """
        if callable(u0):
            grid = np.arange(2**self.level + 1) * 2.0**-self.level
            u0 = np.asarray(u0(grid), dtype=np.float64)
        u = _admissible(u0, self.level, self.path.dimension)

        iterates = [u]
        sup_norms = [float(np.max(np.linalg.norm(u, axis=-1)))]
        while sup_norms[-1] >= tol and len(iterates) <= max_iter:
            u = self.step(u)
            iterates.append(u)
            sup_norms.append(float(np.max(np.linalg.norm(u, axis=-1))))
        converged = sup_norms[-1] < tol

        self.logger.info(  # type: ignore
            f"Picard iteration for drift {self.drift.name} at level {self.level}: "
            f"{len(iterates) - 1} iterations, final sup-norm {sup_norms[-1]}, "
            f"converged {converged}."
        )
        return PerturbationResult(self.level, iterates, sup_norms, converged, tol)


def picard_uniqueness(
    path: DyadicPath,
    drift: DriftField,
    level: int,
    u0: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]],
    max_iter: int = 200,
    tol: float = 1e-3,
) -> PerturbationResult:
    r"""
    Shorthand for :meth:`PicardIterator.run`.
    """
    return PicardIterator(path, drift, level).run(u0, max_iter, tol)


def _sup_error(result: SolveResult, reference: SolveResult) -> float:
    indices = np.rint(result.times * 2.0**reference.level).astype(np.int64)
    return float(
        np.max(np.linalg.norm(result.x - reference.x[indices], axis=-1))
    )


def reference_solution(
    path: DyadicPath, drift: DriftField, ref_level: int = 18
) -> SolveResult:
    r"""
    Euler on the uniform partition of the path grid at ``ref_level``, the
    comparator for every convergence measurement. The path is refined in
    place when it is coarser.

    :rtype: SolveResult
    """
    path.refine(max(path.level, ref_level))
    return EulerSolver(path, drift).solve(Partition.uniform(2**ref_level))


class ConvergenceAnalyzer:
    r"""
    Mesh-refinement experiments on one seeded path.

    :param path: the driving path; refined in place to ``ref_level``
    :type path: DyadicPath
    :param drift: the drift :math:`f`
    :type drift: DriftField
    :param ref_level: level of the reference solution
    :type ref_level: int
    """

    def __init__(self, path: DyadicPath, drift: DriftField, ref_level: int = 18):
        self.path = path
        self.drift = drift
        self.ref_level = ref_level
        self.reference = reference_solution(path, drift, ref_level)
        self.solver = EulerSolver(path, drift)

    @logger_decorator
    def convergence_study(
        self,
        counts: Sequence[int] = tuple(2**k for k in range(6, 15)),
        final_tolerance: float = 1e-2,
    ) -> ConvergenceStudy:
        r"""
        Sup-errors against the reference for uniform partitions with the
        given step counts.

        The trend passes when the error falls with every doubling except for
        at most one inversion, which must stay within a factor 2, and the
        finest error is below ``final_tolerance``. The empirical rate is the
        least-squares slope of :math:`\log_2` error against :math:`\log_2 N`.

        :rtype: ConvergenceStudy
        """
        errors = []
        for count in counts:
            result = self.solver.solve(Partition.uniform(count))
            errors.append(_sup_error(result, self.reference))
            self.logger.info(  # type: ignore
                f"Uniform Euler with {count} steps for drift {self.drift.name}: "
                f"sup-error {errors[-1]}."
            )

        inversions = [(a, b) for a, b in zip(errors, errors[1:]) if b > a]
        ratios = [b / a if a > 0.0 else math.inf for a, b in inversions]
        worst = max(ratios, default=1.0)
        trend = len(inversions) <= 1 and worst <= 2.0
        passed = trend and errors[-1] < final_tolerance

        positive = np.array(errors) > 0.0
        if np.count_nonzero(positive) >= 2:
            slope, _ = np.polyfit(
                np.log2(np.array(counts, dtype=np.float64)[positive]),
                np.log2(np.array(errors)[positive]),
                1,
            )
            rate = float(-slope)
        else:
            rate = math.nan
        return ConvergenceStudy(
            drift=self.drift.name,
            seed=self.path.seed,
            ref_level=self.ref_level,
            counts=tuple(counts),
            errors=tuple(errors),
            rate=rate,
            inversions=len(inversions),
            worst_inversion=worst,
            passed=passed,
        )

    @logger_decorator
    def partition_independence(
        self, count: int, seed: int = 0, slack: float = 4.0
    ) -> PartitionComparison:
        r"""
        Solve on uniform, random dyadic and adversarial partitions with
        ``count`` steps and compare the Euler interpolants on the reference
        grid.

        The three partitions share a step count but not a mesh: the
        adversarial skeleton has mesh :math:`2/N` and the largest gap of
        :math:`N` random grid points is of order :math:`\log N / N`. The
        self-error is therefore taken over the whole mesh range they span,
        as the largest sup-error of uniform interpolants with
        :math:`N, N/2, N/4, \ldots` steps down to the first count whose mesh
        reaches the coarsest partition mesh. Passes when every mutual
        sup-distance is within ``slack`` times that self-error.

        :rtype: PartitionComparison
        """
        partitions = {
            kind: partition_factory(kind, count, path=self.path, seed=seed)
            for kind in ("uniform", "random_dyadic", "adversarial_extrema")
        }
        curves = {}
        for kind, partition in partitions.items():
            result = self.solver.solve(partition)
            curves[kind] = self.solver.interpolant(result, self.ref_level)

        def distance(a: np.ndarray, b: np.ndarray) -> float:
            return float(np.max(np.linalg.norm(a - b, axis=-1)))

        coarsest = max(p.mesh for p in partitions.values())
        self_errors = {count: distance(curves["uniform"], self.reference.x)}
        steps = count
        while steps > 1 and 1.0 / steps < coarsest:
            steps //= 2
            result = self.solver.solve(Partition.uniform(steps))
            curve = self.solver.interpolant(result, self.ref_level)
            self_errors[steps] = distance(curve, self.reference.x)
        self_error = max(self_errors.values())

        distances = {
            (a, b): distance(curves[a], curves[b]) for a, b in combinations(curves, 2)
        }
        passed = all(d <= slack * self_error for d in distances.values())
        for (a, b), d in distances.items():
            self.logger.info(  # type: ignore
                f"Sup-distance between {a} and {b} solutions with {count} steps: {d}."
            )
        self.logger.info(  # type: ignore
            f"Self-error over meshes {1.0 / count} to {coarsest}: {self_error}."
        )
        return PartitionComparison(
            drift=self.drift.name,
            seed=self.path.seed,
            count=count,
            meshes={kind: p.mesh for kind, p in partitions.items()},
            self_error=self_error,
            self_errors=self_errors,
            distances=distances,
            passed=passed,
        )


def convergence_study(
    path: DyadicPath,
    drift: DriftField,
    counts: Sequence[int] = tuple(2**k for k in range(6, 15)),
    ref_level: int = 18,
) -> ConvergenceStudy:
    r"""
    Shorthand for :meth:`ConvergenceAnalyzer.convergence_study`.
    """
    return ConvergenceAnalyzer(path, drift, ref_level).convergence_study(counts)


def partition_independence(
    path: DyadicPath, drift: DriftField, count: int, ref_level: int = 18
) -> PartitionComparison:
    r"""
    Shorthand for :meth:`ConvergenceAnalyzer.partition_independence`.
    """
    return ConvergenceAnalyzer(path, drift, ref_level).partition_independence(count)
