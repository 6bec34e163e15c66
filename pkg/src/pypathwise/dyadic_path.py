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
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import (
    FrozenPathError,
    InvalidDimensionError,
    InvalidLevelError,
    MisalignedWindowError,
    PathFormatError,
)
from .random_streams import MASK64, PATH_NODE, counter_normals, stream_key

MAX_LEVEL = 24

MAGIC = b"PWPATH\x00\x00"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sHHHQ")


@dataclass(frozen=True)
class DyadicIndex:
    r"""
    The dyadic interval :math:`I_{nk} = [k 2^{-n}, (k+1) 2^{-n}]` of [0, 1].

    :param n: level of the interval
    :type n: int
    :param k: index of the interval, :math:`0 \leq k \leq 2^n - 1`
    :type k: int
    """

    n: int
    k: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_LEVEL:
            raise InvalidLevelError(self.n, MAX_LEVEL)
        if not 0 <= self.k < 2**self.n:
            raise MisalignedWindowError(
                self.start,
                self.end,
                f"index k={self.k} must lie in [0, {2**self.n - 1}]",
            )

    @property
    def length(self) -> float:
        return 2.0**-self.n

    @property
    def start(self) -> float:
        return self.k * 2.0**-self.n

    @property
    def end(self) -> float:
        return (self.k + 1) * 2.0**-self.n

    def children(self) -> Tuple["DyadicIndex", "DyadicIndex"]:
        r"""
        The two halves :math:`I_{n+1,2k}` and :math:`I_{n+1,2k+1}`.
        """
        return DyadicIndex(self.n + 1, 2 * self.k), DyadicIndex(
            self.n + 1, 2 * self.k + 1
        )


def _check_level(level: int) -> None:
    if not 0 <= level <= MAX_LEVEL:
        raise InvalidLevelError(level, MAX_LEVEL)


def _check_dimension(dimension: int) -> None:
    if dimension < 1:
        raise InvalidDimensionError(dimension)


def _coarsest(seeds: np.ndarray, dimension: int) -> np.ndarray:
    # W(0) = 0 and W(1) ~ N(0, I_d), node (level 0, index 1)
    values = np.zeros((len(seeds), 2, dimension))
    one = np.array([1], dtype=np.uint64)
    for coordinate in range(dimension):
        keys = stream_key(seeds, PATH_NODE, coordinate, 0)[:, None]
        values[:, 1, coordinate] = counter_normals(keys, one)[:, 0]
    return values


def _bisect(values: np.ndarray, seeds: np.ndarray, level: int) -> np.ndarray:
    r"""
    Brownian-bridge bisection of every interval of a level ``level`` skeleton.

    ``values`` has shape ``(R, 2**level + 1, d)``; the new midpoint of
    :math:`[s, t]` is :math:`(W(s) + W(t))/2 + \sqrt{(t-s)/4}\, Z` with
    :math:`Z` drawn from the stream of node ``(level + 1, odd index)``.
    """
    replicas, size, dimension = values.shape
    fine = np.empty((replicas, 2 * (size - 1) + 1, dimension))
    fine[:, ::2] = values
    new_level = level + 1
    odd = np.arange(1, 2**new_level, 2, dtype=np.uint64)
    scale = math.sqrt(2.0 ** -(new_level + 1))
    for coordinate in range(dimension):
        keys = stream_key(seeds, PATH_NODE, coordinate, new_level)[:, None]
        noise = counter_normals(keys, odd[None, :])
        fine[:, 1::2, coordinate] = (
            0.5 * (values[:, :-1, coordinate] + values[:, 1:, coordinate])
            + scale * noise
        )
    return fine


def _refine_values(
    values: np.ndarray, seeds: np.ndarray, level: int, target: int
) -> np.ndarray:
    for current in range(level, target):
        values = _bisect(values, seeds, current)
    return values


def _seed_array(seeds: Union[int, Sequence[int], np.ndarray]) -> np.ndarray:
    if isinstance(seeds, np.ndarray):
        return seeds.astype(np.uint64, copy=False).reshape(-1)
    if isinstance(seeds, int):
        seeds = [seeds]
    return np.array([int(s) & MASK64 for s in seeds], dtype=np.uint64)


def generate_batch(
    seeds: Union[Sequence[int], np.ndarray], dimension: int, level: int
) -> np.ndarray:
    r"""
    Generate many paths at once.

    Row ``i`` of the result is bit-identical to
    ``generate(seeds[i], dimension, level).values``.

    :param seeds: one seed per path
    :type seeds: Sequence[int] or numpy.ndarray
    :param dimension: spatial dimension :math:`d \geq 1`
    :type dimension: int
    :param level: dyadic level :math:`L \leq 24`
    :type level: int
    :return: array of shape ``(len(seeds), 2**level + 1, dimension)``
    :rtype: numpy.ndarray
    """
    _check_level(level)
    _check_dimension(dimension)
    seed_array = _seed_array(seeds)
    return _refine_values(_coarsest(seed_array, dimension), seed_array, 0, level)


class DyadicPath:
    r"""
    A seeded :math:`d`-dimensional Brownian path on [0, 1], stored on the
    dyadic grid :math:`\{k 2^{-L}\}` and refinable in place.

    The randomness of each bridge midpoint is derived from
    ``(seed, coordinate, level, index)`` only, so refining a path to a finer
    level gives exactly the path generated at that level, and generation is
    deterministic whatever the order of refinement.
    """

    def __init__(
        self,
        values: np.ndarray,
        level: int,
        seed: int,
        frozen: bool = False,
        window: Optional[Tuple[float, float]] = None,
    ):
        """
        Paths are normally built through :meth:`generate`; the constructor
        wraps an existing array of grid values.

        :param values: array of shape ``(2**level + 1, d)``
        :type values: numpy.ndarray
        :param level: dyadic level of the grid
        :type level: int
        :param seed: 64-bit seed the path was generated from
        :type seed: int
        :param frozen: whether the path refuses further refinement
        :type frozen: bool
        :param window: for rescaled paths, the window of the parent path
        :type window: Tuple[float, float], optional
        """
        _check_level(level)
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != 2**level + 1:
            raise PathFormatError(
                f"expected {2**level + 1} grid values, got shape {values.shape}"
            )
        _check_dimension(values.shape[1])
        self.values = values
        self.level = level
        self.seed = int(seed) & MASK64
        self.frozen = frozen
        self.window = window

    @classmethod
    def generate(cls, seed: int, dimension: int, level: int) -> "DyadicPath":
        r"""
        Generate the path of ``seed`` at level ``level``.

        Increments over level-:math:`L` intervals are i.i.d.
        :math:`N(0, 2^{-L} I_d)`.

        :param seed: 64-bit seed
        :type seed: int
        :param dimension: spatial dimension :math:`d \geq 1`
        :type dimension: int
        :param level: dyadic level, at most 24
        :type level: int
        :return: the generated path
        :rtype: DyadicPath
        :raises InvalidLevelError: if ``level`` exceeds the memory guard
        :raises InvalidDimensionError: if ``dimension`` is 0
        """
        values = generate_batch([seed], dimension, level)[0]
        return cls(values, level, seed)

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    @property
    def spacing(self) -> float:
        return 2.0**-self.level

    @property
    def times(self) -> np.ndarray:
        return np.arange(2**self.level + 1) * self.spacing

    def increments(self) -> np.ndarray:
        return np.diff(self.values, axis=0)

    def freeze(self) -> "DyadicPath":
        r"""
        Make the path immutable; frozen paths can be shared between readers.
        """
        self.frozen = True
        self.values.setflags(write=False)
        return self

    def refine(self, level: int) -> "DyadicPath":
        r"""
        Refine the path in place to level ``level`` by Brownian-bridge bisection.

        Values at the existing grid times are left bit-identical.

        :param level: the new level, not below the current one
        :type level: int
        :return: the path itself
        :rtype: DyadicPath
        :raises FrozenPathError: if the path is frozen
        :raises InvalidLevelError: if ``level`` is below the current level
        """
        if level < self.level:
            raise InvalidLevelError(
                level,
                MAX_LEVEL,
                f"Cannot refine from level {self.level} down to level {level}.",
            )
        _check_level(level)
        if level == self.level:
            return self
        if self.frozen:
            raise FrozenPathError()
        seeds = np.array([self.seed], dtype=np.uint64)
        fine = _refine_values(self.values[None, :, :], seeds, self.level, level)
        self.values = fine[0]
        self.level = level
        return self

    def grid_index(self, t: float) -> Optional[int]:
        r"""
        The grid index of time ``t``, or ``None`` if ``t`` is off the grid.
        """
        position = t * 2**self.level
        index = int(round(position))
        if position != index or not 0 <= index <= 2**self.level:
            return None
        return index

    def at(self, t: float) -> Tuple[np.ndarray, bool]:
        r"""
        The position :math:`W(t)`.

        Off-grid times are answered by linear interpolation between the two
        neighbouring nodes and flagged.

        :param t: time in [0, 1]
        :type t: float
        :return: the position and whether ``t`` lies on the grid
        :rtype: Tuple[numpy.ndarray, bool]
        """
        if not 0.0 <= t <= 1.0:
            raise MisalignedWindowError(t, t, "query time outside [0, 1]")
        index = self.grid_index(t)
        if index is not None:
            return self.values[index].copy(), True
        position = t * 2**self.level
        left = int(math.floor(position))
        weight = position - left
        value = (1.0 - weight) * self.values[left] + weight * self.values[left + 1]
        return value, False

    def rescale_window(self, a: float, b: float) -> "DyadicPath":
        r"""
        The rescaled path :math:`t \mapsto l^{-1/2}(W(a + tl) - W(a))` on [0, 1].

        The window length :math:`l = b - a` must be a power of two
        :math:`2^{-m}` with :math:`m \leq L` and :math:`a` must be a grid
        time; the result lives at level :math:`L - m` and is frozen.
        Other aligned dyadic lengths such as :math:`3/8` have no dyadic grid
        after rescaling and are rejected; split them into aligned
        power-of-two blocks first, as
        :meth:`pypathwise.OccupationCalculator.rho_window_rescaled` does.

        :param a: left end of the window
        :type a: float
        :param b: right end of the window
        :type b: float
        :return: the rescaled path
        :rtype: DyadicPath
        :raises MisalignedWindowError: for windows off the grid
        """
        if not 0.0 <= a < b <= 1.0:
            raise MisalignedWindowError(a, b, "need 0 <= a < b <= 1")
        if a == 0.0 and b == 1.0:
            return self
        length = b - a
        mantissa, exponent = math.frexp(length)
        if mantissa != 0.5:
            raise MisalignedWindowError(a, b, "length is not a power of two")
        m = 1 - exponent
        if m > self.level:
            raise MisalignedWindowError(
                a, b, f"window is shorter than the grid spacing 2^-{self.level}"
            )
        start = self.grid_index(a)
        if start is None:
            raise MisalignedWindowError(a, b, "left end is not a grid time")
        count = 2 ** (self.level - m)
        window = self.values[start : start + count + 1]
        scaled = (window - window[0]) * 2.0 ** (m / 2)
        return DyadicPath(
            scaled, self.level - m, self.seed, frozen=True, window=(a, b)
        ).freeze()

    def dump(self, path: Path) -> None:
        r"""
        Write the path in the binary format: a header
        ``(magic, version, d, L, seed)`` followed by little-endian float64
        values in time-major, coordinate-minor order.

        :param path: destination file
        :type path: Path
        """
        header = _HEADER.pack(
            MAGIC, FORMAT_VERSION, self.dimension, self.level, self.seed
        )
        with open(path, "wb") as file:
            file.write(header)
            file.write(np.ascontiguousarray(self.values, dtype="<f8").tobytes())

    @classmethod
    def load(cls, path: Path) -> "DyadicPath":
        r"""
        Read a path written by :meth:`dump`.

        :param path: source file
        :type path: Path
        :rtype: DyadicPath
        :raises PathFormatError: on a wrong magic, version or size
        """
        with open(path, "rb") as file:
            data = file.read()
        if len(data) < _HEADER.size:
            raise PathFormatError("file is shorter than the header")
        magic, version, dimension, level, seed = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise PathFormatError("bad magic number")
        if version != FORMAT_VERSION:
            raise PathFormatError(f"unsupported version {version}")
        expected = (2**level + 1) * dimension * 8
        body = data[_HEADER.size :]
        if len(body) != expected:
            raise PathFormatError(f"expected {expected} value bytes, got {len(body)}")
        values = np.frombuffer(body, dtype="<f8").astype(np.float64)
        return cls(values.reshape(2**level + 1, dimension), level, seed)

    def __repr__(self) -> str:
        return (
            f"DyadicPath(seed={self.seed}, dimension={self.dimension}, "
            f"level={self.level}, frozen={self.frozen})"
        )


def generate(seed: int, dimension: int, level: int) -> DyadicPath:
    r"""
    Shorthand for :meth:`DyadicPath.generate`.
    """
    return DyadicPath.generate(seed, dimension, level)


def refine(path: DyadicPath, level: int) -> DyadicPath:
    r"""
    Shorthand for :meth:`DyadicPath.refine`.
    """
    return path.refine(level)


def rescale_window(path: DyadicPath, a: float, b: float) -> DyadicPath:
    r"""
    Shorthand for :meth:`DyadicPath.rescale_window`.
    """
    return path.rescale_window(a, b)
