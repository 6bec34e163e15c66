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

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

from .drift_fields import FieldCatalog
from .dyadic_path import MAX_LEVEL
from .exceptions import (
    ConfigError,
    MomentRangeError,
    OddMomentError,
    PypathwiseError,
    UnknownPartitionKindError,
)
from .kernel_lab import WordEnumerator
from .occupation import OVERSAMPLING

EXPERIMENTS = (
    "paths",
    "moments",
    "constants",
    "tails",
    "l2",
    "dyadic",
    "euler",
    "uniqueness",
    "chain",
    "kernels",
    "words",
    "all",
)
FORMATS = ("csv", "json")
DEFAULT_QUAD_LEVEL = 12


@dataclass(frozen=True)
class RunConfig:
    r"""
    Everything a run depends on. A run is reproducible from its
    configuration alone.
    """

    experiment: str = "all"
    drift: str = "sign"
    dimension: int = 1
    seed: int = 1
    replicas: int = 10_000
    level: int = 14
    quad_level: Optional[int] = None
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    out: str = "results"
    formats: Tuple[str, ...] = FORMATS
    emit_gnuplot: bool = False
    x: float = 0.1
    x_grid: Tuple[float, ...] = (0.5, 0.1, 0.02, 0.004)
    lambda_grid: Tuple[float, ...] = (1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0)
    n_grid: Tuple[int, ...] = (4, 5, 6, 7, 8, 9, 10)
    p: int = 2
    p_grid: Tuple[int, ...] = ()
    lp: float = 2.0
    window: Tuple[float, float] = (0.0, 1.0)
    partition: str = "uniform:256"
    horizon: float = 1.0
    ref_level: int = 18
    study: bool = False
    starts: int = 10
    seed_count: int = 1
    tol: float = 1e-3
    max_iter: int = 200
    chain_n: int = 8
    chain_k: int = 0
    chain_r: int = 16
    chain_x0: float = 0.5
    word_length: int = 12
    kernel_times: Tuple[float, ...] = (0.01, 0.25, 1.0)
    constant: Optional[float] = None

    @property
    def partition_kind(self) -> str:
        return self.partition.split(":", 1)[0]

    @property
    def partition_count(self) -> int:
        return int(self.partition.split(":", 1)[1])

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


KEYS = tuple(f.name for f in fields(RunConfig))
_SCALARS = {f.name: f.type for f in fields(RunConfig) if f.type in (int, float)}


def load_config(path: Path) -> Dict[str, Any]:
    r"""
    Read a flat JSON configuration document.

    :raises ConfigError: if the file is unreadable or not a JSON object
    """
    try:
        with open(path, "r") as file:
            document = json.load(file)
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigError(f"cannot read {path}: {error}") from error
    if not isinstance(document, dict):
        raise ConfigError(f"{path} does not hold a JSON object")
    return document


_SEQUENCE_KEYS = (
    "formats",
    "x_grid",
    "lambda_grid",
    "n_grid",
    "p_grid",
    "kernel_times",
    "window",
)


def _as_tuple(value: Any) -> Tuple[Any, ...]:
    if isinstance(value, str):
        return tuple(v.strip() for v in value.split(",") if v.strip())
    if isinstance(value, (list, tuple)):
        return tuple(value)
    return (value,)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _check_even(p: int) -> None:
    try:
        if p % 2:
            raise OddMomentError(p)
        if not 2 <= p <= 8:
            raise MomentRangeError(p)
    except PypathwiseError as error:
        raise ConfigError(error.message) from error


def validate_config(
    document: Optional[Mapping[str, Any]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    r"""
    Merge a configuration document with flag overrides, fill defaults and
    check every range.

    Override values of ``None`` mean "not given". For the ``dyadic``
    experiment an unset quadrature level becomes :math:`\max n + 6`; for all
    others it becomes 12.

    :param document: key-value configuration, e.g. from :func:`load_config`
    :type document: Mapping, optional
    :param overrides: values from command-line flags
    :type overrides: Mapping, optional
    :rtype: RunConfig
    :raises ConfigError: for unknown keys or values out of range
    """
    merged: Dict[str, Any] = dict(document or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    unknown = sorted(set(merged) - set(KEYS))
    _require(not unknown, f"unknown keys {', '.join(unknown)}")

    for key in _SEQUENCE_KEYS:
        if key in merged:
            merged[key] = _as_tuple(merged[key])
    try:
        for key, kind in _SCALARS.items():
            if key in merged:
                merged[key] = kind(merged[key])  # type: ignore
        config = RunConfig(**merged)
        config = replace(
            config,
            x_grid=tuple(float(v) for v in config.x_grid),
            lambda_grid=tuple(float(v) for v in config.lambda_grid),
            n_grid=tuple(int(v) for v in config.n_grid),
            p_grid=tuple(int(v) for v in config.p_grid),
            kernel_times=tuple(float(v) for v in config.kernel_times),
            window=tuple(float(v) for v in config.window),  # type: ignore
        )
    except (TypeError, ValueError) as error:
        raise ConfigError(f"Invalid configuration: {error}") from error

    _require(
        config.experiment in EXPERIMENTS, f"unknown experiment {config.experiment}"
    )
    _require(config.dimension >= 1, "dimension must be at least 1")
    _require(0 <= config.seed < 2**64, "seed must be an unsigned 64-bit integer")
    _require(config.replicas >= 2, "replicas must be at least 2")
    _require(config.workers >= 1, "workers must be at least 1")
    _require(0 <= config.level <= MAX_LEVEL, f"level must lie in [0, {MAX_LEVEL}]")
    _require(
        0 <= config.ref_level <= MAX_LEVEL, f"ref_level must lie in [0, {MAX_LEVEL}]"
    )
    bad_formats = set(config.formats) - set(FORMATS)
    _require(not bad_formats, f"unknown formats {', '.join(sorted(bad_formats))}")

    try:
        FieldCatalog().scalar(config.drift, config.dimension)
    except PypathwiseError as error:
        raise ConfigError(error.message) from error

    _check_even(config.p)
    for p in config.p_grid:
        _check_even(p)
    _require(abs(config.x) <= 1.0, "x must lie in [-1, 1]")
    _require(all(abs(v) <= 1.0 for v in config.x_grid), "x_grid must lie in [-1, 1]")
    _require(
        all(v >= 0.0 for v in config.lambda_grid), "lambda_grid must be non-negative"
    )
    _require(config.lp > 0.0, "lp must be positive")
    _require(
        len(config.window) == 2 and 0.0 <= config.window[0] < config.window[1] <= 1.0,
        "window must be a pair a < b inside [0, 1]",
    )
    _require(
        all(4 <= n <= 12 for n in config.n_grid) and len(config.n_grid) > 0,
        "n_grid must be a non-empty subset of 4..12",
    )

    kind, _, count = config.partition.partition(":")
    _require(
        kind in UnknownPartitionKindError.VALID_KINDS,
        f"partition kind {kind} is not one of "
        f"{', '.join(UnknownPartitionKindError.VALID_KINDS)}",
    )
    _require(count.isdigit() and int(count) >= 1, "partition must look like kind:N")
    _require(config.horizon > 0.0, "horizon must be positive")
    _require(config.starts >= 1, "starts must be at least 1")
    _require(config.seed_count >= 1, "seed_count must be at least 1")
    _require(config.tol > 0.0, "tol must be positive")
    _require(config.max_iter >= 1, "max_iter must be at least 1")
    _require(
        1 <= config.word_length <= WordEnumerator.MAX_LENGTH,
        f"word_length must lie in [1, {WordEnumerator.MAX_LENGTH}]",
    )
    _require(all(t > 0.0 for t in config.kernel_times), "kernel_times must be positive")
    _require(
        config.constant is None
        or (math.isfinite(config.constant) and config.constant >= 0.0),
        "constant must be a non-negative number",
    )
    _require(
        0 <= config.chain_k and 0 <= config.chain_r
        and config.chain_k + config.chain_r <= 2**config.chain_n,
        "chain_k + chain_r must not exceed 2^chain_n",
    )

    floors = {
        "dyadic": (max(config.n_grid) + OVERSAMPLING, "max(n_grid)"),
        "chain": (config.chain_n + OVERSAMPLING, "chain_n"),
    }
    if config.quad_level is None:
        quad_level = floors.get(config.experiment, (DEFAULT_QUAD_LEVEL, ""))[0]
        config = replace(config, quad_level=quad_level)
    elif config.experiment in floors:
        floor, name = floors[config.experiment]
        _require(
            config.quad_level >= floor,
            f"quad_level {config.quad_level} is below the oversampling floor "
            f"{name} + {OVERSAMPLING} = {floor}",
        )
    assert config.quad_level is not None
    _require(
        OVERSAMPLING <= config.quad_level <= MAX_LEVEL,
        f"quad_level must lie in [{OVERSAMPLING}, {MAX_LEVEL}]",
    )
    return config
