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
import math

import numpy as np
import pytest

from pypathwise import (
    MonteCarloEstimator,
    catalog,
    difference_field,
    dyadic_modulus_sweep,
    generate,
    path_sanity,
    rho_window,
    second_moment_oracle,
)
from pypathwise.estimators import (
    Z_99,
    clopper_pearson,
    fitted_constant,
    gaussian_envelope,
    half_width,
)
from pypathwise.exceptions import (
    IntegrabilityError,
    MisalignedWindowError,
    MomentRangeError,
    OddMomentError,
    OversamplingError,
    RegimeWarning,
)
from pypathwise.random_streams import REPLICA, sub_seed


@pytest.fixture
def estimator() -> MonteCarloEstimator:
    return MonteCarloEstimator(replicas=1000, seed=3, quad_level=10, workers=2)


def test_helpers() -> None:
    assert half_width(4.0, 100) == pytest.approx(Z_99 * 0.2)
    assert fitted_constant(2.0, 2, 1.0) == pytest.approx(math.sqrt(2.0))
    assert fitted_constant(0.0, 4, 0.5) == 0.0
    assert gaussian_envelope(0.0, 0.7) == 2.0
    assert gaussian_envelope(1.0, 0.0) == 0.0
    assert gaussian_envelope(1.2, 1.0) == pytest.approx(2.0 * math.exp(-0.5))


def test_clopper_pearson() -> None:
    lower, upper = clopper_pearson(0, 100)
    assert lower == 0.0
    assert upper == pytest.approx(1.0 - 0.005 ** (1.0 / 100), rel=1e-6)
    lower, upper = clopper_pearson(50, 100)
    assert lower < 0.5 < upper


def test_replica_seeds_follow_the_stream_labels(estimator) -> None:
    seeds = estimator.replica_seeds(5)
    assert [int(s) for s in seeds] == [sub_seed(3, REPLICA, i) for i in range(5)]


def test_samples_match_single_path_functionals(estimator) -> None:
    g = catalog("sign")
    estimator.replicas = 4
    samples = estimator._rho_samples(g, [np.array([0.3])])[:, 0]
    for i, value in enumerate(samples):
        path = generate(sub_seed(3, REPLICA, i), 1, 10)
        assert value == rho_window(path, g, 0.0, 1.0, 0.3, 10).value


def test_results_do_not_depend_on_worker_count() -> None:
    g = catalog("sign")
    one = MonteCarloEstimator(300, 5, 9, workers=1).moment_bound(g, 0.2, 2)
    many = MonteCarloEstimator(300, 5, 9, workers=4).moment_bound(g, 0.2, 2)
    assert one.estimate == many.estimate
    assert one.variance == many.variance


def test_moment_bound_agrees_with_oracle(estimator, caplog) -> None:
    caplog.set_level(logging.INFO)
    summary = estimator.moment_bound(catalog("sign"), 0.5, 2)
    cell = summary.cells[0]
    assert "oracle" in cell
    assert summary.passed
    assert summary.constant == pytest.approx(
        math.sqrt(summary.estimate) / 0.5, rel=1e-12
    )
    assert any("fitted constant" in record.message for record in caplog.records)


def test_moment_bound_for_zero_field(estimator) -> None:
    summary = estimator.moment_bound(catalog("zero"), 0.5, 4)
    assert summary.estimate == 0.0
    assert summary.constant == 0.0


@pytest.mark.parametrize("p, error", [(3, OddMomentError), (10, MomentRangeError)])
def test_moment_order_is_checked(estimator, p, error) -> None:
    with pytest.raises(error):
        estimator.moment_bound(catalog("sign"), 0.5, p)


def test_odd_moment_message(estimator) -> None:
    with pytest.raises(OddMomentError, match="even positive integers p only"):
        estimator.moment_bound(catalog("sign"), 0.5, 1)


def test_large_shift_warns(estimator) -> None:
    estimator.replicas = 50
    with pytest.warns(RegimeWarning):
        estimator.moment_bound(catalog("sign"), 1.5, 2)


def test_constant_sweep(estimator) -> None:
    summary = estimator.constant_sweep(catalog("sign"), 2, [0.02, 0.5, 0.1])
    assert [cell["x"] for cell in summary.cells] == [0.5, 0.1, 0.02]
    assert set(summary.flags) == {"constant_grows_towards_zero", "monotone_shrinkage"}
    assert summary.constant == max(cell["constant"] for cell in summary.cells)
    # larger shifts move more occupation
    moments = [cell["second_moment"] for cell in summary.cells]
    assert moments[0] > moments[-1]


def test_moment_shape(estimator) -> None:
    summary = estimator.moment_shape(catalog("sign"), [0.5, 0.1], (2, 4))
    assert len(summary.cells) == 4
    for cell in summary.cells:
        if cell["p"] == 2:
            assert cell["constant"] == pytest.approx(cell["fitted_constant"])


def test_tail_bound(estimator) -> None:
    summary = estimator.tail_bound(
        catalog("sign"), 0.5, (0.0, 1.0), [0.5, 1.0, 2.0, 3.0]
    )
    frequencies = [cell["frequency"] for cell in summary.cells]
    assert frequencies == sorted(frequencies, reverse=True)
    assert summary.constant > 0.0
    assert summary.passed


def test_tail_bound_window_must_be_aligned(estimator) -> None:
    with pytest.raises(MisalignedWindowError):
        estimator.tail_bound(catalog("sign"), 0.5, (0.1, 0.9), [1.0], constant=1.0)


def test_l2_functional_bound(estimator) -> None:
    g = catalog("box")
    summary = estimator.l2_functional_bound(g, 2.0)
    cell = summary.cells[0]
    assert cell["norm"] == pytest.approx(math.sqrt(2.0))
    assert cell["oracle"] == pytest.approx(second_moment_oracle(g))
    assert summary.passed


@pytest.mark.parametrize("name, p", [("sign", 2.0), ("box", 1.5), ("box", 1.2)])
def test_l2_functional_bound_needs_integrability(estimator, name, p) -> None:
    with pytest.raises(IntegrabilityError):
        estimator.l2_functional_bound(catalog(name), p)


def test_dyadic_modulus_sweep(estimator) -> None:
    estimator.replicas = 100
    summary = estimator.dyadic_modulus_sweep(catalog("sign"), [2, 3, 4])
    assert [cell["n"] for cell in summary.cells] == [2, 3, 4]
    assert summary.constant == max(
        max(cell["rho_modulus"], cell["sigma_modulus"]) for cell in summary.cells
    )
    frozen = estimator.dyadic_modulus_sweep(
        catalog("sign"), [2, 3, 4], frozen_constant=summary.constant / 2
    )
    assert not frozen.passed


def test_dyadic_modulus_sweep_needs_oversampling(estimator) -> None:
    with pytest.raises(OversamplingError):
        estimator.dyadic_modulus_sweep(catalog("sign"), [4, 5])


def test_path_sanity() -> None:
    summary = path_sanity(2000, 6, 11)
    cell = summary.cells[0]
    assert cell["endpoint_variance"] == pytest.approx(1.0, abs=0.15)
    assert cell["increment_variance_ratio"] == pytest.approx(1.0, abs=0.05)
    assert cell["ks_statistic"] < 2.0 * cell["ks_critical"]


def test_oracle_matches_difference_field_moment(estimator) -> None:
    g = catalog("radial_step")
    summary = estimator.moment_bound(g, 0.25, 2)
    expected = second_moment_oracle(difference_field(g, 0.25, 0.0))
    assert summary.cells[0]["oracle"] == pytest.approx(expected)


@pytest.mark.slow
def test_acceptance_scale_moment_and_tail() -> None:
    estimator = MonteCarloEstimator(replicas=10_000, seed=1, quad_level=12)
    moments = estimator.moment_bound(catalog("sign"), 0.1, 2)
    assert moments.passed
    tails = estimator.tail_bound(
        catalog("sign"), 0.1, (0.0, 1.0), [1.0, 2.0, 3.0, 4.0], moments.constant
    )
    assert tails.passed


@pytest.mark.slow
def test_path_sanity_at_acceptance_scale() -> None:
    summary = path_sanity(10_000, 8, 1)
    cell = summary.cells[0]
    assert 0.97 <= cell["endpoint_variance"] <= 1.03
    assert cell["ks_statistic"] < cell["ks_critical"]
    assert summary.passed


@pytest.mark.slow
def test_dyadic_scaling_is_flat_across_levels() -> None:
    n_grid = list(range(4, 11))
    summary = dyadic_modulus_sweep(catalog("sign"), n_grid, 200, 1)
    assert [cell["n"] for cell in summary.cells] == n_grid
    for key in ("rho_modulus", "sigma_modulus"):
        maxima = [cell[key] for cell in summary.cells]
        assert max(maxima) <= 3.0 * min(maxima)
    assert summary.passed
