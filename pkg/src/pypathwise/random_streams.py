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
r"""
Counter-based random streams.

Every random number used by ``pypathwise`` is a pure function of a seed and a
tuple of integer labels, hashed with the splitmix64 finaliser. Nothing depends
on the position of a draw in a global sequence, so a path node, a Monte Carlo
replica or a concatenated time block always sees the same randomness no matter
in which order, or on which thread, it is computed.
"""

from typing import Union

import numpy as np
from scipy.special import ndtri  # type: ignore

MASK64 = (1 << 64) - 1

# labels separating the independent uses of one seed
PATH_NODE = 1
REPLICA = 2
TIME_BLOCK = 3
PARTITION = 4
START = 5

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_UNIT = 2.0**-53

SeedLike = Union[int, np.ndarray]


def _as_uint64(value: SeedLike) -> np.ndarray:
    if isinstance(value, np.ndarray):
        return value.astype(np.uint64, copy=False)
    return np.asarray(int(value) & MASK64, dtype=np.uint64)


def splitmix64(x: SeedLike) -> np.ndarray:
    r"""
    Apply the splitmix64 finaliser elementwise.

    :param x: integer or array of unsigned 64-bit integers
    :type x: int or numpy.ndarray
    :return: hashed values, same shape as ``x``
    :rtype: numpy.ndarray
    """
    z = _as_uint64(x)
    with np.errstate(over="ignore"):
        z = z + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def stream_key(seed: SeedLike, *labels: int) -> np.ndarray:
    r"""
    Derive the key of an independent stream from a seed and integer labels.

    :param seed: base seed, or an array of seeds
    :type seed: int or numpy.ndarray
    :return: stream key(s) with the shape of ``seed``
    :rtype: numpy.ndarray
    """
    key = splitmix64(seed)
    for label in labels:
        key = splitmix64(key ^ _as_uint64(label))
    return key


def sub_seed(seed: int, *labels: int) -> int:
    r"""
    Derive a new 64-bit seed, e.g. for replica ``i`` of a run seeded by ``seed``.

    :param seed: base seed
    :type seed: int
    :return: derived seed
    :rtype: int
    """
    return int(stream_key(seed, *labels))


def sub_seeds(seed: int, label: int, indices: np.ndarray) -> np.ndarray:
    r"""
    Vectorised :func:`sub_seed` over an array of trailing labels.

    :return: derived seeds as ``uint64``
    :rtype: numpy.ndarray
    """
    key = stream_key(seed, label)
    return splitmix64(key ^ _as_uint64(np.asarray(indices, dtype=np.uint64)))


def counter_uniforms(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    r"""
    Uniform variates in (0, 1) for every (key, counter) pair.

    ``keys`` and ``counters`` broadcast against each other; each output is a
    53-bit uniform centred inside its cell, so 0 and 1 never occur.

    :param keys: stream keys
    :type keys: numpy.ndarray
    :param counters: node counters
    :type counters: numpy.ndarray
    :rtype: numpy.ndarray
    """
    h = splitmix64(splitmix64(_as_uint64(keys) ^ _as_uint64(counters)))
    return ((h >> np.uint64(11)).astype(np.float64) + 0.5) * _UNIT


def counter_normals(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    r"""
    Standard normal variates for every (key, counter) pair, by inversion.

    :rtype: numpy.ndarray
    """
    return ndtri(counter_uniforms(keys, counters))
