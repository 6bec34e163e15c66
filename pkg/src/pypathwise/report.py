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

import csv
import json
import math
import os
import tempfile
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .estimators import EstimateSummary
from .logger import logger_decorator
from .solver import PerturbationResult, SolveResult

Row = Dict[str, Any]


def format_value(value: Any) -> str:
    r"""
    Render a CSV cell: floats with 17 significant digits, booleans as
    ``true``/``false``.
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (tuple, list)):
        return " ".join(format_value(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _jsonable(value: Any) -> Any:
    if is_dataclass(value) and not isinstance(value, type):
        return _jsonable(asdict(value))
    if isinstance(value, dict):
        return {
            "/".join(k) if isinstance(k, tuple) else str(k): _jsonable(v)
            for k, v in value.items()
        }
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class ReportGenerator:
    r"""
    Writes experiment artifacts: CSV tables with one row per cell or grid
    time, JSON summaries, gnuplot scripts and the run manifest.

    Every CSV row carries the seed and levels that produced it.
    """

    def summary_rows(self, summary: EstimateSummary, level: int) -> List[Row]:
        r"""
        Flatten the cells of a Monte Carlo summary into CSV rows.

        :param summary: the experiment outcome
        :type summary: pypathwise.EstimateSummary
        :param level: path level of the run
        :type level: int
        :rtype: List[Dict[str, Any]]
        """
        context = {
            "experiment": summary.experiment,
            "field": summary.field_name,
            "seed": summary.seed,
            "replicas": summary.replicas,
            "level": level,
            "quad_level": summary.quad_level,
        }
        return [{**context, **cell} for cell in summary.cells]

    def solve_rows(self, result: SolveResult) -> List[Row]:
        r"""
        One row per partition time of an Euler solution.

        :rtype: List[Dict[str, Any]]
        """
        rows = []
        for n, t in enumerate(result.times):
            row: Row = {
                "drift": result.drift,
                "seed": result.seed,
                "level": result.level,
                "partition": result.partition.kind,
                "n": n,
                "t": float(t),
            }
            for j in range(result.x.shape[1]):
                row[f"x{j + 1}"] = float(result.x[n, j])
                row[f"w{j + 1}"] = float(result.driving[n, j])
            rows.append(row)
        return rows

    def perturbation_rows(
        self, result: PerturbationResult, drift: str, seed: int, start: int
    ) -> List[Row]:
        r"""
        One row per Picard iterate.

        :rtype: List[Dict[str, Any]]
        """
        return [
            {
                "drift": drift,
                "seed": seed,
                "level": result.level,
                "start": start,
                "iteration": i,
                "sup_norm": norm,
                "converged": result.converged,
            }
            for i, norm in enumerate(result.sup_norms)
        ]

    @logger_decorator
    def write_csv(self, path: Path, rows: Sequence[Row]) -> Path:
        r"""
        Write rows as RFC 4180 CSV with a header; columns follow first
        appearance across the rows.

        :param path: destination file
        :type path: Path
        :param rows: the table
        :type rows: Sequence[Dict[str, Any]]
        :return: the written path
        :rtype: Path
        """
        columns: List[str] = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)

        with open(path, "w", newline="") as file:
            writer = csv.writer(file)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(row.get(c)) for c in columns])

        self.logger.info(f"Wrote {len(rows)} rows to {path}.")  # type: ignore
        return path

    @logger_decorator
    def write_json(self, path: Path, data: Any) -> Path:
        r"""
        Write ``data`` as UTF-8 JSON with sorted keys.

        :rtype: Path
        """
        with open(path, "w", encoding="utf-8") as file:
            json.dump(_jsonable(data), file, indent=4, sort_keys=True)
        self.logger.info(f"Wrote {path}.")  # type: ignore
        return path

    @logger_decorator
    def write_manifest(self, path: Path, manifest: Dict[str, Any]) -> Path:
        r"""
        Write the run manifest atomically: the document goes to a temporary
        file in the same directory, which then replaces ``path``.

        :rtype: Path
        """
        path = Path(path)
        descriptor, temporary = tempfile.mkstemp(
            prefix=".manifest-", suffix=".json", dir=path.parent
        )
        try:
            with os.fdopen(descriptor, "w", encoding="utf-8") as file:
                json.dump(_jsonable(manifest), file, indent=4, sort_keys=True)
            os.replace(temporary, path)
        except BaseException:
            if os.path.exists(temporary):
                os.remove(temporary)
            raise
        self.logger.info(f"Wrote manifest {path}.")  # type: ignore
        return path

    def write_gnuplot(
        self,
        csv_path: Path,
        x_column: str,
        y_columns: Iterable[str],
        columns: Sequence[str],
        logscale: Optional[str] = None,
    ) -> Path:
        r"""
        Write a gnuplot script next to ``csv_path`` plotting ``y_columns``
        against ``x_column``.

        :rtype: Path
        """
        csv_path = Path(csv_path)
        script = csv_path.with_suffix(".gp")
        index = {name: i + 1 for i, name in enumerate(columns)}
        plots = ", ".join(
            f"'{csv_path.name}' using {index[x_column]}:{index[y]} "
            f"with linespoints title '{y}'"
            for y in y_columns
            if y in index
        )
        lines = [
            "set datafile separator ','",
            "set key autotitle columnhead",
            f"set xlabel '{x_column}'",
            "set terminal pngcairo size 900,600",
            f"set output '{csv_path.with_suffix('.png').name}'",
        ]
        if logscale:
            lines.append(f"set logscale {logscale}")
        lines.append(f"plot {plots}")
        script.write_text("\n".join(lines) + "\n")
        return script

    def write_table(
        self,
        out_dir: Path,
        name: str,
        rows: Sequence[Row],
        formats: Sequence[str],
        summary: Optional[Any] = None,
        plot: Optional[Dict[str, Any]] = None,
    ) -> List[Path]:
        r"""
        Write one experiment's artifacts in the requested formats.

        :param out_dir: output directory, created when missing
        :type out_dir: Path
        :param name: file stem
        :type name: str
        :param rows: the CSV table
        :param formats: subset of ``csv`` and ``json``
        :param summary: object written as the JSON summary, the rows otherwise
        :param plot: ``x``, ``y`` and optional ``logscale`` of a gnuplot script
        :return: the written files
        :rtype: List[Path]
        """
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written: List[Path] = []
        if "csv" in formats:
            csv_path = self.write_csv(out_dir / f"{name}.csv", rows)
            written.append(csv_path)
            if plot is not None and rows:
                columns: List[str] = []
                for row in rows:
                    columns.extend(k for k in row if k not in columns)
                written.append(
                    self.write_gnuplot(
                        csv_path, plot["x"], plot["y"], columns, plot.get("logscale")
                    )
                )
        if "json" in formats:
            written.append(
                self.write_json(
                    out_dir / f"{name}.json",
                    summary if summary is not None else list(rows),
                )
            )
        return written
