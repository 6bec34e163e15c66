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
from pathlib import Path

import pytest

from pypathwise import RunConfig, load_config, validate_config
from pypathwise.config import DEFAULT_QUAD_LEVEL, EXPERIMENTS
from pypathwise.exceptions import ConfigError


def test_defaults() -> None:
    config = validate_config()
    assert config.experiment == "all"
    assert config.drift == "sign"
    assert config.replicas == 10_000
    assert config.quad_level == DEFAULT_QUAD_LEVEL
    assert config.partition_kind == "uniform"
    assert config.partition_count == 256
    assert set(config.to_dict()) >= {"seed", "replicas", "level", "quad_level"}


def test_overrides_win_and_none_means_unset() -> None:
    config = validate_config(
        {"seed": 5, "replicas": 200, "drift": "box"},
        {"seed": 9, "replicas": None, "experiment": "moments"},
    )
    assert config.seed == 9
    assert config.replicas == 200
    assert config.drift == "box"
    assert config.experiment == "moments"


def test_sequences_from_strings_and_lists() -> None:
    config = validate_config(
        {"x_grid": "0.5, 0.1", "n_grid": [4, 6], "formats": "csv", "window": [0, 0.5]}
    )
    assert config.x_grid == (0.5, 0.1)
    assert config.n_grid == (4, 6)
    assert config.formats == ("csv",)
    assert config.window == (0.0, 0.5)


@pytest.mark.parametrize(
    "experiment, overrides, expected",
    [
        ("dyadic", {"n_grid": [4, 5, 6]}, 12),
        ("dyadic", {}, 16),
        ("chain", {"chain_n": 9}, 15),
        ("tails", {}, DEFAULT_QUAD_LEVEL),
    ],
)
def test_quadrature_level_defaults(experiment, overrides, expected) -> None:
    config = validate_config({"experiment": experiment, **overrides})
    assert config.quad_level == expected


@pytest.mark.parametrize(
    "document, message",
    [
        ({"colour": "blue"}, "unknown keys colour"),
        ({"experiment": "fly"}, "unknown experiment"),
        ({"dimension": 0}, "dimension"),
        ({"replicas": 1}, "replicas"),
        ({"level": 30}, "level"),
        ({"formats": "csv,xml"}, "unknown formats xml"),
        ({"drift": "banana"}, "Unknown field"),
        ({"drift": "const_2"}, "bound"),
        ({"p": 3}, "even positive integers p only"),
        ({"p": 10}, "outside the supported range"),
        ({"p_grid": [2, 5]}, "even positive integers"),
        ({"x": 1.5}, "x must lie"),
        ({"window": [0.5, 0.25]}, "window"),
        ({"n_grid": [3, 4]}, "n_grid"),
        ({"partition": "chebyshev:8"}, "partition kind"),
        ({"partition": "uniform"}, "kind:N"),
        ({"word_length": 21}, "word_length"),
        ({"kernel_times": [0.0]}, "kernel_times"),
        ({"constant": -1.0}, "constant"),
        ({"chain_n": 4, "chain_k": 10, "chain_r": 8}, "chain_k"),
        ({"experiment": "dyadic", "quad_level": 12}, "oversampling floor"),
        ({"quad_level": 40}, "quad_level"),
        ({"replicas": "many"}, "Invalid configuration"),
    ],
)
def test_invalid_configurations(document, message) -> None:
    with pytest.raises(ConfigError, match=message):
        validate_config(document)


def test_load_config(tmpdir) -> None:
    path = Path(tmpdir) / "run.json"
    path.write_text(json.dumps({"experiment": "words", "word_length": 8}))
    config = validate_config(load_config(path))
    assert config.experiment == "words"
    assert config.word_length == 8


@pytest.mark.parametrize("content", ["not json", "[1, 2]"])
def test_load_config_rejects_bad_documents(tmpdir, content) -> None:
    path = Path(tmpdir) / "run.json"
    path.write_text(content)
    with pytest.raises(ConfigError):
        load_config(path)


def test_load_config_missing_file(tmpdir) -> None:
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(Path(tmpdir) / "missing.json")


def test_experiments_cover_every_subcommand() -> None:
    assert set(EXPERIMENTS) == {
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
    }
    assert RunConfig().experiment in EXPERIMENTS
