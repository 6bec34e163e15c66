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

from pypathwise.cli import (
    EXIT_CONFIG,
    EXIT_ENVELOPE,
    EXIT_OK,
    ExperimentRunner,
    build_parser,
    main,
)
from pypathwise.config import validate_config
from pypathwise.exceptions import IntegrabilityError


def _manifest(out: Path) -> dict:
    with open(out / "manifest.json", "r") as file:
        return json.load(file)


def test_words(tmpdir, capsys) -> None:
    out = Path(tmpdir)
    assert main(["words", "--k", "12", "--out", str(out)]) == EXIT_OK
    printed = capsys.readouterr().out.splitlines()
    assert printed[:2] == ["k,count", "12,2048"]
    assert (out / "words.csv").exists()
    assert (out / "words.json").exists()
    manifest = _manifest(out)
    assert manifest["experiments"]["words"]["passed"] is True
    assert manifest["config"]["word_length"] == 12


def test_kernels(tmpdir, capsys) -> None:
    out = Path(tmpdir)
    code = main(["kernels", "--times", "0.01,1", "--out", str(out), "--format", "csv"])
    assert code == EXIT_OK
    printed = capsys.readouterr().out.splitlines()
    assert printed[0] == "t,mass_E,scaled_mass_B,scaled_mass_D"
    assert len(printed) == 3
    assert (out / "kernels.csv").exists()
    assert not (out / "kernels.json").exists()


def test_euler_writes_manifest(tmpdir) -> None:
    out = Path(tmpdir)
    argv = [
        "euler",
        "--seed",
        "7",
        "--level",
        "10",
        "--partition",
        "uniform:64",
        "--out",
        str(out),
    ]
    assert main(argv) == EXIT_OK
    manifest = _manifest(out)
    euler = manifest["experiments"]["euler"]
    assert euler["passed"] is True
    assert euler["bounded_drift_envelope"] is True
    assert euler["girsanov_round_trip_error"] <= 1e-9
    assert manifest["version"] == "0.1.0"
    assert str(out / "euler.csv") in manifest["files"]


def test_chain(tmpdir) -> None:
    out = Path(tmpdir)
    argv = ["chain", "--chain-n", "6", "--chain-r", "4", "--level", "12"]
    assert main(argv + ["--out", str(out)]) == EXIT_OK
    assert (out / "chain.csv").read_text().startswith("field,seed,level,quad_level,q")


def test_moments_small(tmpdir) -> None:
    out = Path(tmpdir)
    argv = ["moments", "--replicas", "200", "--seed", "3", "--workers", "2"]
    assert main(argv + ["--out", str(out)]) in (EXIT_OK, EXIT_ENVELOPE)
    assert (out / "moments.csv").exists()
    assert "moments" in _manifest(out)["experiments"]


def test_moments_with_p_grid_writes_shape_table(tmpdir, capsys) -> None:
    out = Path(tmpdir)
    argv = ["moments", "--replicas", "200", "--seed", "3"]
    argv += ["--x-grid", "0.5,0.1", "--p-grid", "2,4", "--out", str(out)]
    assert main(argv) in (EXIT_OK, EXIT_ENVELOPE)
    assert "shape over p (2, 4)" in capsys.readouterr().out
    lines = (out / "moment_shape.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert "p" in header and "fitted_constant" in header
    assert len(lines) == 1 + 4
    assert str(out / "moment_shape.csv") in _manifest(out)["files"]


@pytest.mark.parametrize(
    "argv, message",
    [
        (["moments", "--p", "3"], "even positive integers p only"),
        (["moments", "--drift", "banana"], "Unknown field"),
        (["dyadic", "--quad-level", "12"], "oversampling floor"),
        (["l2", "--drift", "sign", "--replicas", "100"], "error:"),
    ],
)
def test_invalid_input_exits_with_config_code(tmpdir, capsys, argv, message) -> None:
    assert main(argv + ["--out", str(tmpdir)]) == EXIT_CONFIG
    assert message in capsys.readouterr().err


def test_config_file_with_flag_override(tmpdir, capsys) -> None:
    path = Path(tmpdir) / "run.json"
    path.write_text(json.dumps({"word_length": 5, "formats": ["json"]}))
    argv = ["words", "--config", str(path), "--k", "6", "--out", str(tmpdir)]
    assert main(argv) == EXIT_OK
    assert "6,32" in capsys.readouterr().out
    assert (Path(tmpdir) / "words.json").exists()


def test_unreadable_config_file(tmpdir, capsys) -> None:
    argv = ["words", "--config", str(Path(tmpdir) / "missing.json")]
    assert main(argv) == EXIT_CONFIG
    assert "cannot read" in capsys.readouterr().err


def test_parser() -> None:
    parser = build_parser()
    args = parser.parse_args(["tails", "--lambdas", "1,2.5", "--window", "0,0.5"])
    assert args.experiment == "tails"
    assert args.lambda_grid == [1.0, 2.5]
    assert args.window == [0.0, 0.5]
    assert args.seed is None
    with pytest.raises(SystemExit) as exit_info:
        parser.parse_args([])
    assert exit_info.value.code == 2
    with pytest.raises(SystemExit) as exit_info:
        parser.parse_args(["--version"])
    assert exit_info.value.code == 0


def test_runner_raises_for_single_l2_without_norm(tmpdir) -> None:
    config = validate_config(
        {"drift": "sign", "replicas": 50, "out": str(tmpdir), "formats": ["csv"]}
    )
    runner = ExperimentRunner(config)
    with pytest.raises(IntegrabilityError, match="no finite L"):
        runner.run("l2")


@pytest.mark.slow
def test_uniqueness_for_sign_drift_on_seed_seven(tmpdir, capsys) -> None:
    out = Path(tmpdir)
    argv = ["uniqueness", "--drift", "sign", "--seed", "7", "--level", "14"]
    argv += ["--starts", "10", "--tol", "1e-3", "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert "10 of 10 starts converged" in capsys.readouterr().out
    assert _manifest(out)["experiments"]["uniqueness"]["passed"] is True


@pytest.mark.slow
@pytest.mark.parametrize(
    "argv, names",
    [
        (
            ["moments", "--x-grid", "0.5,0.1", "--p-grid", "2,4"],
            ["moments", "moment_shape"],
        ),
        (["tails", "--lambdas", "1,2,3"], ["tails"]),
        (["dyadic", "--n-grid", "4,5"], ["dyadic"]),
    ],
)
def test_csv_output_does_not_depend_on_worker_count(tmpdir, argv, names) -> None:
    common = argv + ["--replicas", "2000", "--seed", "5", "--format", "csv"]
    single = Path(tmpdir) / "single"
    many = Path(tmpdir) / "many"
    main(common + ["--workers", "1", "--out", str(single)])
    main(common + ["--workers", "8", "--out", str(many)])
    for name in names:
        first = (single / f"{name}.csv").read_bytes()
        assert first == (many / f"{name}.csv").read_bytes()
