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
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .drift_fields import ScalarField, window_field
from .dyadic_path import DyadicIndex, DyadicPath
from .exceptions import (
    InsufficientPathLevelError,
    InvalidDimensionError,
    MisalignedWindowError,
    OversamplingError,
    RegimeWarning,
)
from .logger import logger_decorator

OVERSAMPLING = OversamplingError.OVERSAMPLING

Point = Union[float, Sequence[float], np.ndarray]


def as_point(x: Optional[Point], dimension: int) -> np.ndarray:
    if x is None:
        return np.zeros(dimension)
    point = np.asarray(x, dtype=np.float64)
    if point.ndim == 0:
        point = np.full(dimension, float(point))
    if point.shape != (dimension,):
        raise InvalidDimensionError(
            point.size,
            f"Shift {point.tolist()} does not live in dimension {dimension}.",
        )
    return point


def occupation_integrand(
    values: np.ndarray,
    level: int,
    g: ScalarField,
    x: np.ndarray,
    y: Optional[np.ndarray],
    quad_level: int,
    start: int,
    stop: int,
) -> np.ndarray:
    r"""
    Samples of :math:`g(t_j, W(t_j) + x) - g(t_j, W(t_j) + y)` at the
    quadrature nodes :math:`t_j = j 2^{-L_q}`, ``start <= j < stop``; with
    ``y=None`` the second term is left out.

    :param values: path values of shape ``(..., 2**level + 1, d)``; leading
                   axes index independent paths
    :type values: numpy.ndarray
    :param level: level of the path grid, at least ``quad_level``
    :type level: int
    :return: samples of shape ``(..., stop - start)``
    :rtype: numpy.ndarray
    """
    stride = 2 ** (level - quad_level)
    nodes = values[..., start * stride : stop * stride : stride, :]
    times = np.arange(start, stop) * 2.0**-quad_level
    if y is None:
        return g.evaluate(times, nodes + x)
    return g.evaluate(times, nodes + x) - g.evaluate(times, nodes + y)


def dyadic_sums(integrand: np.ndarray, quad_level: int, groups: int) -> np.ndarray:
    r"""
    Left-endpoint Riemann sums of ``integrand`` over ``groups`` consecutive
    equal pieces.

    The samples are summed first and scaled by :math:`2^{-L_q}` afterwards,
    so sums of integer-valued samples are exact and additive across levels.

    :rtype: numpy.ndarray
    """
    pieces = integrand.reshape(integrand.shape[:-1] + (groups, -1))
    return pieces.sum(axis=-1) * 2.0**-quad_level


def occupation_integral(
    values: np.ndarray,
    level: int,
    g: ScalarField,
    x: np.ndarray,
    y: Optional[np.ndarray],
    quad_level: int,
    start: int = 0,
    stop: Optional[int] = None,
) -> np.ndarray:
    r"""
    The occupation integral
    :math:`\int \{g(t, W(t) + x) - g(t, W(t) + y)\}\,dt` over
    :math:`[s 2^{-L_q}, e 2^{-L_q})` for every path in ``values``.

    Single-path functionals and the Monte Carlo layer both go through this
    function, so they agree bit for bit.

    :rtype: numpy.ndarray
    """
    if stop is None:
        stop = 2**quad_level
    integrand = occupation_integrand(values, level, g, x, y, quad_level, start, stop)
    return dyadic_sums(integrand, quad_level, 1)[..., 0]


@dataclass(frozen=True)
class PathFunctional:
    r"""
    A computed occupation functional together with everything that determines it.
    """

    seed: int
    path_level: int
    field: str
    interval: Union[DyadicIndex, Tuple[float, float]]
    x: Tuple[float, ...]
    y: Optional[Tuple[float, ...]]
    quad_level: int
    value: float

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class ChainResult:
    r"""
    The chain :math:`x_{q+1} = x_q + \sigma_{n,k+q}(x_q)` and the summed
    statistic :math:`\sum_q |\rho_{n,k+q}(x_{q-1}, x_q)|`.
    """

    n: int
    k: int
    r: int
    points: np.ndarray
    rho_sum: float
    in_regime: bool

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.points, axis=-1)


class OccupationCalculator:
    r"""
    Occupation functionals of a field along one path.

    All functionals are left-endpoint Riemann sums on the level-:math:`L_q`
    dyadic grid. For a level-:math:`n` interval :math:`I_{nk}`,

    .. math::
        \sigma_{nk}(x) = \int_{I_{nk}} \{g(t, W(t) + x) - g(t, W(t))\}\,dt

        \rho_{nk}(x, y) = \sigma_{nk}(x) - \sigma_{nk}(y)

    :param path: the path, refined to at least ``quad_level``
    :type path: DyadicPath
    :param g: the test function
    :type g: ScalarField
    :param quad_level: quadrature level :math:`L_q`
    :type quad_level: int
    :raises InsufficientPathLevelError: if the path is coarser than ``quad_level``
    """

    def __init__(self, path: DyadicPath, g: ScalarField, quad_level: int):
        if path.level < quad_level:
            raise InsufficientPathLevelError(path.level, quad_level)
        if g.dimension != path.dimension:
            raise InvalidDimensionError(
                g.dimension,
                f"Field {g.name} has dimension {g.dimension}, "
                f"the path has dimension {path.dimension}.",
            )
        self.path = path
        self.g = g
        self.quad_level = quad_level

    def _check_level(self, n: int) -> None:
        if self.quad_level < n + OVERSAMPLING:
            raise OversamplingError(self.quad_level, n)

    def _integral(self, x: np.ndarray, y: np.ndarray, start: int, stop: int) -> float:
        return float(
            occupation_integral(
                self.path.values,
                self.path.level,
                self.g,
                x,
                y,
                self.quad_level,
                start,
                stop,
            )
        )

    def _functional(
        self,
        interval: Union[DyadicIndex, Tuple[float, float]],
        x: np.ndarray,
        y: Optional[np.ndarray],
        value: float,
    ) -> PathFunctional:
        return PathFunctional(
            seed=self.path.seed,
            path_level=self.path.level,
            field=self.g.name,
            interval=interval,
            x=tuple(float(v) for v in x),
            y=None if y is None else tuple(float(v) for v in y),
            quad_level=self.quad_level,
            value=value,
        )

    def _bounds(self, index: DyadicIndex) -> Tuple[int, int]:
        self._check_level(index.n)
        width = 2 ** (self.quad_level - index.n)
        return index.k * width, (index.k + 1) * width

    def sigma(self, index: DyadicIndex, x: Point) -> PathFunctional:
        r"""
        :math:`\sigma_{nk}(x)`, defined as :math:`\rho_{nk}(x, 0)`.

        :param index: the dyadic interval :math:`I_{nk}`
        :type index: DyadicIndex
        :param x: the shift
        :type x: float or Sequence[float]
        :rtype: PathFunctional
        :raises OversamplingError: if :math:`L_q < n + 6`
        """
        x_arr = as_point(x, self.path.dimension)
        y_arr = np.zeros(self.path.dimension)
        start, stop = self._bounds(index)
        value = self._integral(x_arr, y_arr, start, stop)
        return self._functional(index, x_arr, None, value)

    def rho(self, index: DyadicIndex, x: Point, y: Point) -> PathFunctional:
        r"""
        :math:`\rho_{nk}(x, y)`, computed in one pass over the nodes.

        :rtype: PathFunctional
        :raises OversamplingError: if :math:`L_q < n + 6`
        """
        x_arr = as_point(x, self.path.dimension)
        y_arr = as_point(y, self.path.dimension)
        start, stop = self._bounds(index)
        value = self._integral(x_arr, y_arr, start, stop)
        return self._functional(index, x_arr, y_arr, value)

    def rho_window(
        self, a: float, b: float, x: Point, y: Optional[Point] = None
    ) -> PathFunctional:
        r"""
        :math:`\rho(x) = \int_a^b \{g(t, W(t) + x) - g(t, W(t) + y)\}\,dt`
        with :math:`y = 0` unless given.

        :param a: left end, a grid time of level :math:`L_q - 6`
        :type a: float
        :param b: right end, a grid time of level :math:`L_q - 6`
        :type b: float
        :rtype: PathFunctional
        :raises MisalignedWindowError: if the window is off the grid
        """
        if not 0.0 <= a < b <= 1.0:
            raise MisalignedWindowError(a, b, "need 0 <= a < b <= 1")
        coarse = max(self.quad_level - OVERSAMPLING, 0)
        for end in (a, b):
            if end * 2**coarse != math.floor(end * 2**coarse):
                raise MisalignedWindowError(
                    a, b, f"ends must be grid times of level {coarse}"
                )
        x_arr = as_point(x, self.path.dimension)
        y_arr = as_point(y, self.path.dimension)
        start = int(a * 2**self.quad_level)
        stop = int(b * 2**self.quad_level)
        return self._functional(
            (a, b),
            x_arr,
            None if y is None else y_arr,
            self._integral(x_arr, y_arr, start, stop),
        )

    def _rescaled_block(self, a: float, b: float, x: Point) -> float:
        length = b - a
        rescaled = self.path.rescale_window(a, b)
        m = self.path.level - rescaled.level
        anchor, _ = self.path.at(a)
        h = window_field(self.g, a, length, anchor)
        inner = OccupationCalculator(rescaled, h, self.quad_level - m)
        x_arr = as_point(x, self.path.dimension) / math.sqrt(length)
        return length * inner.rho_window(0.0, 1.0, x_arr).value

    def rho_window_rescaled(self, a: float, b: float, x: Point) -> float:
        r"""
        Compute :math:`\rho(x)` over :math:`[a, b]` through the rescaled path.

        With :math:`l = b - a`, :math:`\tilde W(s) = l^{-1/2}(W(a + sl) - W(a))`
        and :math:`h(s, z) = g(a + sl, W(a) + l^{1/2} z)`,

        .. math::
            \rho(x) = l \int_0^1 \{h(s, \tilde W(s) + l^{-1/2} x)
                      - h(s, \tilde W(s))\}\,ds

        on the same quadrature nodes. A window whose length is not a power
        of two, such as :math:`[0, 3/8]`, is split into its largest aligned
        dyadic blocks and the rescaled integrals of the blocks are summed.

        :rtype: float
        """
        # alignment of the window itself is checked by rho_window's rules
        self.rho_window(a, b, x)
        coarse = max(self.quad_level - OVERSAMPLING, 0)
        start = int(a * 2**coarse)
        stop = int(b * 2**coarse)
        total = 0.0
        while start < stop:
            size = 1
            while start % (2 * size) == 0 and start + 2 * size <= stop:
                size *= 2
            left = math.ldexp(start, -coarse)
            right = math.ldexp(start + size, -coarse)
            total += self._rescaled_block(left, right, x)
            start += size
        return total

    def sigma_all(self, n: int, x: Point) -> np.ndarray:
        r"""
        :math:`\sigma_{nk}(x)` for :math:`k = 0, \ldots, 2^n - 1`.

        :rtype: numpy.ndarray
        """
        return self.rho_all(n, x, None)

    def rho_all(self, n: int, x: Point, y: Optional[Point]) -> np.ndarray:
        r"""
        :math:`\rho_{nk}(x, y)` for :math:`k = 0, \ldots, 2^n - 1`.

        :rtype: numpy.ndarray
        """
        self._check_level(n)
        x_arr = as_point(x, self.path.dimension)
        y_arr = as_point(y, self.path.dimension)
        integrand = occupation_integrand(
            self.path.values,
            self.path.level,
            self.g,
            x_arr,
            y_arr,
            self.quad_level,
            0,
            2**self.quad_level,
        )
        return dyadic_sums(integrand, self.quad_level, 2**n)

    @logger_decorator
    def euler_chain(self, n: int, k: int, r: int, x0: Point) -> ChainResult:
        r"""
        Iterate :math:`x_{q+1} = x_q + \sigma_{n,k+q}(x_q)` for
        :math:`q = 0, \ldots, r - 1` and sum
        :math:`|\rho_{n,k+q}(x_{q-1}, x_q)|` over :math:`q = 1, \ldots, r`.

        A term whose interval :math:`I_{n,k+q}` would run past time 1 is left
        out of the sum. Chains longer than :math:`2^{n/2}` are computed but
        flagged with a :class:`~pypathwise.exceptions.RegimeWarning`.

        :param n: level of the intervals
        :type n: int
        :param k: index of the first interval
        :type k: int
        :param r: number of steps
        :type r: int
        :param x0: starting point
        :type x0: float or Sequence[float]
        :rtype: ChainResult
        """
        self._check_level(n)
        if k < 0 or r < 0 or k + r > 2**n:
            raise MisalignedWindowError(
                k * 2.0**-n, (k + r) * 2.0**-n, f"need 0 <= k and k + r <= 2^{n}"
            )
        in_regime = r <= 2 ** (n / 2)
        if not in_regime:
            message = (
                f"Chain length {r} exceeds 2^(n/2) = {2 ** (n / 2):g} at level {n}."
            )
            self.logger.warning(message)  # type: ignore
            warnings.warn(message, RegimeWarning, stacklevel=2)

        width = 2 ** (self.quad_level - n)
        points = np.zeros((r + 1, self.path.dimension))
        points[0] = as_point(x0, self.path.dimension)
        origin = np.zeros(self.path.dimension)
        for q in range(r):
            start = (k + q) * width
            step = self._integral(points[q], origin, start, start + width)
            points[q + 1] = points[q] + step

        rho_sum = 0.0
        for q in range(1, r + 1):
            if k + q >= 2**n:
                break
            start = (k + q) * width
            rho_sum += abs(
                self._integral(points[q - 1], points[q], start, start + width)
            )

        self.logger.info(  # type: ignore
            f"Chain of {r} steps from interval ({n}, {k}) for field {self.g.name}: "
            f"final |x| = {np.linalg.norm(points[-1])}, rho sum = {rho_sum}."
        )
        return ChainResult(n, k, r, points, rho_sum, in_regime)


def sigma(
    path: DyadicPath, g: ScalarField, index: DyadicIndex, x: Point, quad_level: int
) -> PathFunctional:
    r"""
    Shorthand for :meth:`OccupationCalculator.sigma`.
    """
    return OccupationCalculator(path, g, quad_level).sigma(index, x)


def rho(
    path: DyadicPath,
    g: ScalarField,
    index: DyadicIndex,
    x: Point,
    y: Point,
    quad_level: int,
) -> PathFunctional:
    r"""
    Shorthand for :meth:`OccupationCalculator.rho`.
    """
    return OccupationCalculator(path, g, quad_level).rho(index, x, y)


def rho_window(
    path: DyadicPath, g: ScalarField, a: float, b: float, x: Point, quad_level: int
) -> PathFunctional:
    r"""
    Shorthand for :meth:`OccupationCalculator.rho_window`.
    """
    return OccupationCalculator(path, g, quad_level).rho_window(a, b, x)


def euler_chain(
    path: DyadicPath,
    g: ScalarField,
    n: int,
    k: int,
    r: int,
    x0: Point,
    quad_level: int,
) -> ChainResult:
    r"""
    Shorthand for :meth:`OccupationCalculator.euler_chain`.
    """
    return OccupationCalculator(path, g, quad_level).euler_chain(n, k, r, x0)
