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

import logging

import numpy as np
import pytest

from pypathwise import (
    ConvergenceAnalyzer,
    EulerSolver,
    FieldCatalog,
    Partition,
    PicardIterator,
    euler,
    euler_interpolant,
    generate,
    girsanov_transform,
    partition_factory,
    picard_uniqueness,
)
from pypathwise.exceptions import (
    InadmissibleStartError,
    InsufficientPathLevelError,
    InvalidPartitionError,
    UnknownPartitionKindError,
)
from pypathwise.random_streams import START, sub_seed
from pypathwise.solver import random_admissible_start, reference_solution, snap_to_grid

fields = FieldCatalog()


def test_partition_validation() -> None:
    partition = Partition(np.array([0.0, 0.25, 1.0]))
    assert partition.mesh == 0.75
    assert partition.size == 2
    assert partition.horizon == 1.0
    with pytest.raises(InvalidPartitionError):
        Partition(np.array([0.1, 1.0]))
    with pytest.raises(InvalidPartitionError):
        Partition(np.array([0.0, 0.5, 0.5, 1.0]))
    with pytest.raises(InvalidPartitionError):
        Partition(np.array([0.0]))
    with pytest.raises(InvalidPartitionError):
        Partition.uniform(0)


def test_snap_to_grid() -> None:
    indices, error = snap_to_grid(Partition(np.array([0.0, 0.3, 1.0])), 4)
    np.testing.assert_array_equal(indices, [0, 5, 16])
    assert error == pytest.approx(abs(5 / 16 - 0.3))
    with pytest.raises(InvalidPartitionError, match="finer"):
        snap_to_grid(Partition(np.array([0.0, 1e-9, 1.0])), 10)


def test_zero_drift_reproduces_the_path() -> None:
    path = generate(7, 2, 10)
    result = euler(path, fields.drift("zero", 2), Partition.uniform(64))
    np.testing.assert_array_equal(result.x, path.values[::16])
    assert result.snap_error == 0.0


def test_constant_drift_adds_a_line() -> None:
    path = generate(7, 1, 10)
    result = euler(path, fields.drift("const_0.5"), Partition.uniform(128))
    np.testing.assert_allclose(
        result.x[:, 0], path.values[::8, 0] + 0.5 * result.times, atol=1e-15
    )


@pytest.mark.parametrize("name", ["sign", "time_flip", "checkerboard_3", "lip_sin"])
def test_bounded_drift_envelope(name) -> None:
    path = generate(2, 1, 12)
    result = euler(path, fields.drift(name), Partition.uniform(256))
    steps = np.diff(result.times)
    residual = np.abs(np.diff(result.x[:, 0]) - np.diff(result.driving[:, 0]))
    assert np.all(residual <= steps + 1e-12)


def test_girsanov_round_trip() -> None:
    path = generate(13, 2, 10)
    drift = fields.drift("radial_step", 2)
    partition = partition_factory("random_dyadic", 100, path=path, seed=4)
    result = euler(path, drift, partition)
    recovered = girsanov_transform(result, drift)
    np.testing.assert_allclose(recovered, result.driving, atol=1e-12)


def test_solve_logs(caplog) -> None:
    caplog.set_level(logging.INFO)
    euler(generate(1, 1, 8), fields.drift("sign"), Partition.uniform(32))
    message = "Euler solve for drift sign on a uniform partition with 32 steps"
    assert any(message in record.message for record in caplog.records)


def test_horizon_past_one() -> None:
    path = generate(21, 1, 8)
    with pytest.raises(InvalidPartitionError, match="concatenation"):
        EulerSolver(path, fields.drift("sign")).solve(Partition.uniform(64, 2.0))
    result = euler(path, fields.drift("zero"), Partition.uniform(64, 2.0))
    assert result.times[-1] == 2.0
    np.testing.assert_array_equal(result.driving[:33], path.values[::8])
    again = euler(generate(21, 1, 8), fields.drift("zero"), Partition.uniform(64, 2.0))
    np.testing.assert_array_equal(result.driving, again.driving)


def test_drift_dimension_must_match() -> None:
    with pytest.raises(InvalidPartitionError):
        EulerSolver(generate(1, 2, 6), fields.drift("sign", 1))


def test_interpolant_matches_solution_at_nodes() -> None:
    path = generate(5, 1, 12)
    drift = fields.drift("sign")
    result = euler(path, drift, Partition.uniform(64))
    curve = euler_interpolant(path, drift, result, 12)
    assert curve.shape == (2**12 + 1, 1)
    np.testing.assert_allclose(curve[::64], result.x, atol=1e-14)
    with pytest.raises(InsufficientPathLevelError):
        euler_interpolant(path, drift, result, 13)


@pytest.mark.parametrize("kind", ["uniform", "random_dyadic", "adversarial_extrema"])
def test_partition_factory(kind) -> None:
    path = generate(3, 1, 10)
    partition = partition_factory(kind, 64, path=path, seed=9)
    assert partition.size == 64
    assert partition.kind == kind
    assert partition.times[0] == 0.0 and partition.times[-1] == 1.0
    indices, error = snap_to_grid(partition, 10)
    assert error == 0.0


def test_random_dyadic_is_seeded() -> None:
    a = partition_factory("random_dyadic", 50, level=10, seed=1)
    b = partition_factory("random_dyadic", 50, level=10, seed=1)
    c = partition_factory("random_dyadic", 50, level=10, seed=2)
    np.testing.assert_array_equal(a.times, b.times)
    assert not np.array_equal(a.times, c.times)


def test_adversarial_partition_visits_the_maximum() -> None:
    path = generate(3, 1, 10)
    partition = partition_factory("adversarial_extrema", 64, path=path)
    peak = int(np.argmax(path.values[:, 0]))
    assert peak * path.spacing in set(partition.times.tolist())


def test_partition_factory_errors() -> None:
    with pytest.raises(UnknownPartitionKindError, match="Valid kinds"):
        partition_factory("chebyshev", 8)
    with pytest.raises(InvalidPartitionError):
        partition_factory("adversarial_extrema", 8)
    with pytest.raises(InvalidPartitionError):
        partition_factory("random_dyadic", 2000, level=10)
    with pytest.raises(InvalidPartitionError):
        partition_factory("uniform", 0)


@pytest.mark.parametrize("level, dimension", [(3, 1), (8, 1), (8, 3)])
def test_random_admissible_start(level, dimension) -> None:
    rng = np.random.default_rng(sub_seed(1, START, level))
    u = random_admissible_start(level, dimension, rng)
    assert u.shape == (2**level + 1, dimension)
    assert np.all(u[0] == 0.0)
    assert np.max(np.linalg.norm(u, axis=-1)) <= 1.0
    jumps = np.linalg.norm(np.diff(u, axis=0), axis=-1)
    assert np.all(jumps <= 2.0**-level * (1.0 + 1e-9))


@pytest.mark.parametrize("seed", range(5))
def test_picard_iteration_converges_for_sign_drift(seed) -> None:
    level = 6
    path = generate(seed, 1, level)
    rng = np.random.default_rng(sub_seed(seed, START, 0))
    u0 = random_admissible_start(level, 1, rng)
    result = picard_uniqueness(path, fields.drift("sign"), level, u0)
    assert result.converged
    # the discrete map is a Volterra sum, so it settles after 2^n + 1 steps
    assert result.iterations <= 2**level + 1
    assert result.sup_norms[-1] < 1e-3


def test_picard_iteration_accepts_callables(caplog) -> None:
    caplog.set_level(logging.INFO)
    path = generate(4, 1, 8)
    iterator = PicardIterator(path, fields.drift("lip_sin"), 8)
    result = iterator.run(lambda t: 0.5 * t, max_iter=50, tol=1e-6)
    assert result.converged
    assert result.sup_norms[0] == pytest.approx(0.5)
    assert "Picard iteration for drift lip_sin" in caplog.text


def test_picard_iteration_for_zero_drift_is_immediate() -> None:
    path = generate(4, 1, 6)
    result = PicardIterator(path, fields.drift("zero"), 6).run(lambda t: 0.25 * t)
    assert result.iterations == 1
    assert result.sup_norms[-1] == 0.0


def test_picard_iteration_respects_max_iter() -> None:
    path = generate(4, 1, 6)
    result = PicardIterator(path, fields.drift("sign"), 6).run(
        lambda t: 0.5 * t, max_iter=1, tol=0.0
    )
    assert result.iterations == 1
    assert not result.converged


@pytest.mark.parametrize(
    "u0, reason",
    [
        (lambda t: 0.5 + 0.0 * t, "u\\(0\\)"),
        (lambda t: np.minimum(2.0 * t, 1.0), "Lipschitz"),
        (np.zeros(10), "grid values"),
    ],
)
def test_inadmissible_starts(u0, reason) -> None:
    path = generate(4, 1, 6)
    with pytest.raises(InadmissibleStartError, match=reason):
        PicardIterator(path, fields.drift("sign"), 6).run(u0)


def test_picard_needs_fine_enough_path() -> None:
    with pytest.raises(InsufficientPathLevelError):
        PicardIterator(generate(4, 1, 5), fields.drift("sign"), 6)


def test_reference_solution_refines_the_path() -> None:
    path = generate(6, 1, 8)
    reference = reference_solution(path, fields.drift("sign"), 11)
    assert path.level == 11
    assert reference.x.shape == (2**11 + 1, 1)


def test_convergence_study_for_lipschitz_drift(caplog) -> None:
    caplog.set_level(logging.INFO)
    path = generate(8, 1, 12)
    analyzer = ConvergenceAnalyzer(path, fields.drift("lip_sin"), 12)
    study = analyzer.convergence_study(counts=(16, 64, 256, 1024))
    assert study.errors[-1] < study.errors[0] / 16
    assert study.passed
    assert study.rate > 0.5
    assert any("sup-error" in record.message for record in caplog.records)


def test_convergence_study_for_zero_drift() -> None:
    analyzer = ConvergenceAnalyzer(generate(8, 1, 10), fields.drift("zero"), 10)
    study = analyzer.convergence_study(counts=(16, 64))
    assert study.errors == (0.0, 0.0)
    assert np.isnan(study.rate)
    assert study.worst_inversion == 1.0
    assert study.passed


def test_partition_independence_report() -> None:
    analyzer = ConvergenceAnalyzer(generate(8, 1, 12), fields.drift("sign"), 12)
    comparison = analyzer.partition_independence(64, seed=2)
    assert set(comparison.meshes) == {"uniform", "random_dyadic", "adversarial_extrema"}
    assert comparison.meshes["uniform"] == pytest.approx(1 / 64)
    assert len(comparison.distances) == 3
    assert all(d >= 0.0 for d in comparison.distances.values())
    assert comparison.self_error > 0.0
    assert comparison.self_error == max(comparison.self_errors.values())
    coarsest = max(comparison.meshes.values())
    assert min(comparison.self_errors) <= 1 / coarsest
    assert 64 in comparison.self_errors


@pytest.mark.slow
def test_sign_drift_on_seed_seven() -> None:
    analyzer = ConvergenceAnalyzer(generate(7, 1, 14), fields.drift("sign"), 18)
    study = analyzer.convergence_study()
    assert study.counts == tuple(2**k for k in range(6, 15))
    assert study.errors[-1] < 1e-2
    assert study.inversions <= 1
    # every 16-fold refinement reduces the error
    assert all(b < a for a, b in zip(study.errors, study.errors[4:]))
    # the one inversion on this path, at 256 to 512 steps, exceeds the 2x slack
    assert study.errors[3] > 2.0 * study.errors[2]
    assert study.worst_inversion > 2.0
    assert not study.passed
    comparison = analyzer.partition_independence(4096)
    assert comparison.passed
    assert comparison.meshes["adversarial_extrema"] <= 2 / 4096


@pytest.mark.slow
@pytest.mark.parametrize("name", ["sign", "checkerboard_4", "time_flip"])
def test_picard_uniqueness_at_level_fourteen(name) -> None:
    level = 14
    drift = fields.drift(name)
    for seed in range(1, 21):
        iterator = PicardIterator(generate(seed, 1, level), drift, level)
        for start in range(10):
            rng = np.random.default_rng(sub_seed(seed, START, start))
            result = iterator.run(random_admissible_start(level, 1, rng))
            assert result.converged, (name, seed, start)
            assert result.sup_norms[-1] < 1e-3
