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
from scipy.integrate import trapezoid

from pypathwise import (
    DyadicIndex,
    OccupationCalculator,
    catalog,
    euler_chain,
    generate,
    rho,
    rho_window,
    sigma,
)
from pypathwise.dyadic_path import generate_batch
from pypathwise.exceptions import (
    InsufficientPathLevelError,
    InvalidDimensionError,
    MisalignedWindowError,
    OversamplingError,
    RegimeWarning,
)
from pypathwise.occupation import as_point, occupation_integral

QUAD_LEVEL = 12


@pytest.fixture
def calculator() -> OccupationCalculator:
    path = generate(17, 1, QUAD_LEVEL)
    return OccupationCalculator(path, catalog("sign"), QUAD_LEVEL)


def test_as_point() -> None:
    np.testing.assert_array_equal(as_point(None, 2), [0.0, 0.0])
    np.testing.assert_array_equal(as_point(0.5, 3), [0.5, 0.5, 0.5])
    with pytest.raises(InvalidDimensionError):
        as_point([1.0, 2.0], 3)


def test_sigma_is_rho_against_origin(calculator) -> None:
    index = DyadicIndex(3, 2)
    assert calculator.sigma(index, 0.2).value == calculator.rho(index, 0.2, 0.0).value


def test_rho_vanishes_for_equal_shifts(calculator) -> None:
    assert calculator.rho(DyadicIndex(2, 1), 0.3, 0.3).value == 0.0


@pytest.mark.parametrize("name", ["zero", "one", "const_0.5"])
def test_constant_fields_have_no_occupation(name) -> None:
    path = generate(3, 1, 10)
    result = sigma(path, catalog(name), DyadicIndex(2, 3), 0.7, 10)
    assert result.value == 0.0


def test_step_fields_are_exactly_additive(calculator) -> None:
    parent = calculator.sigma(DyadicIndex(4, 5), 0.1).value
    left, right = DyadicIndex(4, 5).children()
    halves = calculator.sigma(left, 0.1).value + calculator.sigma(right, 0.1).value
    assert parent == halves


def test_sigma_all_matches_single_intervals(calculator) -> None:
    values = calculator.sigma_all(4, 0.25)
    assert values.shape == (16,)
    for k in (0, 7, 15):
        assert values[k] == calculator.sigma(DyadicIndex(4, k), 0.25).value
    assert calculator.rho_window(0.0, 1.0, 0.25).value == pytest.approx(values.sum())


def test_rho_all_is_difference_of_sigmas(calculator) -> None:
    np.testing.assert_array_equal(
        calculator.rho_all(3, 0.5, -0.25),
        calculator.sigma_all(3, 0.5) - calculator.sigma_all(3, -0.25),
    )


def test_functional_records_its_inputs(calculator) -> None:
    result = rho(calculator.path, calculator.g, DyadicIndex(1, 0), 0.5, 0.1, QUAD_LEVEL)
    assert result.seed == 17
    assert result.field == "sign"
    assert result.x == (0.5,)
    assert result.y == (0.1,)
    assert result.quad_level == QUAD_LEVEL
    assert float(result) == result.value


def test_sign_field_occupation_is_bounded_by_twice_the_length(calculator) -> None:
    index = DyadicIndex(6, 9)
    assert abs(calculator.rho(index, 1.0, -1.0).value) <= 2.0 * index.length


def test_oversampling_floor(calculator) -> None:
    calculator.sigma(DyadicIndex(6, 0), 0.1)
    with pytest.raises(OversamplingError, match="oversampling floor"):
        calculator.sigma(DyadicIndex(7, 0), 0.1)


def test_sign_sigma_against_a_finer_trapezoid() -> None:
    path = generate(7, 1, 20)
    g = catalog("sign")
    value = sigma(path, g, DyadicIndex(0, 0), 0.25, 16).value
    w = path.values
    t = path.times
    fine = trapezoid(g.eval(t, w + 0.25) - g.eval(t, w), dx=path.spacing)
    # a jump in g costs about 2^(-3 L_q / 4), not 2^-L_q
    assert abs(value - fine) <= 4.0 * 2.0**-12
    assert value == pytest.approx(0.781754, abs=1e-5)


def test_path_must_reach_quadrature_level() -> None:
    with pytest.raises(InsufficientPathLevelError):
        OccupationCalculator(generate(1, 1, 8), catalog("sign"), 10)


def test_dimension_mismatch() -> None:
    with pytest.raises(InvalidDimensionError):
        OccupationCalculator(generate(1, 2, 8), catalog("sign"), 8)


@pytest.mark.parametrize("a, b", [(0.1, 0.5), (0.5, 0.25), (0.0, 1.5)])
def test_rho_window_rejects_misaligned_windows(calculator, a, b) -> None:
    with pytest.raises(MisalignedWindowError):
        calculator.rho_window(a, b, 0.1)


@pytest.mark.parametrize("name", ["sign", "lip_sin", "time_flip", "box"])
@pytest.mark.parametrize(
    "a, b", [(0.0, 1.0), (0.25, 0.5), (0.75, 0.8125), (0.0, 0.375), (0.125, 0.9375)]
)
def test_rescaled_window_agrees_with_direct_computation(name, a, b) -> None:
    path = generate(29, 1, QUAD_LEVEL)
    calc = OccupationCalculator(path, catalog(name), QUAD_LEVEL)
    direct = calc.rho_window(a, b, 0.3).value
    assert calc.rho_window_rescaled(a, b, 0.3) == pytest.approx(direct, abs=1e-12)


def test_occupation_integral_batches_agree_with_single_paths() -> None:
    g = catalog("sign")
    batch = generate_batch([4, 5, 6], 1, 10)
    x = np.array([0.2])
    values = occupation_integral(batch, 10, g, x, np.zeros(1), 10)
    for seed, value in zip([4, 5, 6], values):
        single = rho_window(generate(seed, 1, 10), g, 0.0, 1.0, 0.2, 10)
        assert value == single.value


def test_euler_chain(caplog) -> None:
    caplog.set_level(logging.INFO)
    path = generate(3, 1, 14)
    result = euler_chain(path, catalog("sign"), 8, 0, 16, 0.5, 14)
    assert result.points.shape == (17, 1)
    assert result.points[0, 0] == 0.5
    assert result.in_regime
    assert result.rho_sum >= 0.0
    # each step moves by at most 2 |I_n|
    assert np.all(np.abs(np.diff(result.norms)) <= 2.0 * 2.0**-8 + 1e-15)
    assert any("Chain of 16 steps" in record.message for record in caplog.records)


def test_euler_chain_for_zero_field_stays_put() -> None:
    result = euler_chain(generate(3, 1, 12), catalog("zero"), 6, 3, 8, 0.25, 12)
    np.testing.assert_array_equal(result.norms, np.full(9, 0.25))
    assert result.rho_sum == 0.0


def test_euler_chain_outside_regime_warns(caplog) -> None:
    path = generate(3, 1, 12)
    with pytest.warns(RegimeWarning):
        result = euler_chain(path, catalog("sign"), 4, 0, 8, 0.5, 12)
    assert not result.in_regime
    assert any(record.levelname == "WARNING" for record in caplog.records)


def test_euler_chain_must_fit_in_unit_interval() -> None:
    with pytest.raises(MisalignedWindowError):
        euler_chain(generate(3, 1, 12), catalog("sign"), 4, 10, 8, 0.5, 12)
