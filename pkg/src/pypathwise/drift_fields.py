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

import functools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import FieldBoundError, InvalidDimensionError, UnknownFieldError

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]

SMOOTHNESS_TAGS = ("smooth", "lipschitz", "discontinuous")


@dataclass(frozen=True)
class StepProfile:
    r"""
    A piecewise-constant function of one real variable.

    ``values[0]`` holds on :math:`(-\infty, b_0)`, ``values[i]`` on
    :math:`[b_{i-1}, b_i)` and ``values[-1]`` on :math:`[b_{m}, \infty)`.
    Values on the breakpoints themselves form a null set and are irrelevant
    to every integral computed from a profile.

    :param breaks: strictly increasing breakpoints
    :type breaks: Tuple[float, ...]
    :param values: one value per piece, ``len(breaks) + 1`` of them
    :type values: Tuple[float, ...]
    """

    breaks: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.breaks) + 1:
            raise ValueError("a step profile needs one more value than breakpoints")
        if any(b <= a for a, b in zip(self.breaks, self.breaks[1:])):
            raise ValueError("step profile breakpoints must increase strictly")

    def __call__(self, z: np.ndarray) -> np.ndarray:
        index = np.searchsorted(np.asarray(self.breaks), z, side="right")
        return np.asarray(self.values, dtype=np.float64)[index]

    def shift(self, x: float) -> "StepProfile":
        r"""
        The profile of :math:`z \mapsto h(z + x)`.
        """
        return StepProfile(tuple(b - x for b in self.breaks), self.values)

    def __sub__(self, other: "StepProfile") -> "StepProfile":
        breaks = sorted(set(self.breaks) | set(other.breaks))
        if breaks:
            points = (
                [breaks[0] - 1.0]
                + [0.5 * (a + b) for a, b in zip(breaks, breaks[1:])]
                + [breaks[-1] + 1.0]
            )
        else:
            points = [0.0]
        samples = np.asarray(points)
        values = self(samples) - other(samples)
        return StepProfile(tuple(breaks), tuple(float(v) for v in values)).simplify()

    def simplify(self) -> "StepProfile":
        r"""
        Merge neighbouring pieces carrying the same value.
        """
        breaks = []
        values = [self.values[0]]
        for b, v in zip(self.breaks, self.values[1:]):
            if v != values[-1]:
                breaks.append(b)
                values.append(v)
        return StepProfile(tuple(breaks), tuple(values))

    def pieces(
        self, low: float, high: float
    ) -> Tuple[Tuple[float, float, float], ...]:
        r"""
        The non-zero pieces ``(a, b, value)`` clipped to ``[low, high]``.
        """
        edges = [low] + [b for b in self.breaks if low < b < high] + [high]
        pieces = []
        for a, b in zip(edges, edges[1:]):
            value = float(self(np.asarray([0.5 * (a + b)]))[0])
            if value != 0.0:
                pieces.append((a, b, value))
        return tuple(pieces)


def _with_time(t: np.ndarray, values: np.ndarray) -> np.ndarray:
    return values + np.zeros(np.shape(t))


def _zero(t, z):
    return _with_time(t, np.zeros(np.shape(z)[:-1]))


def _constant(c, t, z):
    return _with_time(t, np.full(np.shape(z)[:-1], float(c)))


def _sign(t, z):
    return _with_time(t, np.sign(z[..., 0]))


def _checkerboard(m, t, z):
    return _with_time(t, np.sign(np.prod(np.sin(2.0**m * math.pi * z), axis=-1)))


def _radial_step(t, z):
    inside = np.linalg.norm(z, axis=-1) <= 1.0
    return _with_time(t, np.where(inside, 1.0, -1.0))


def _lip_sin(t, z):
    return _with_time(t, np.sin(z[..., 0]))


def _time_flip(t, z):
    return np.sign(z[..., 0]) * np.sign(np.asarray(t, dtype=np.float64) - 0.5)


def _box(t, z):
    inside = np.all(np.abs(z) <= 1.0, axis=-1)
    return _with_time(t, np.where(inside, 1.0, 0.0))


def _gauss_bump(t, z):
    return _with_time(t, np.exp(-0.5 * np.sum(z * z, axis=-1)))


def _infinite_norm(p: float) -> float:
    return math.inf


def _zero_norm(p: float) -> float:
    return 0.0


def _box_norm(dimension: int, p: float) -> float:
    return 2.0 ** (dimension / p)


def _gauss_bump_norm(dimension: int, p: float) -> float:
    return (2.0 * math.pi / p) ** (dimension / (2.0 * p))


@dataclass(frozen=True)
class ScalarField:
    r"""
    A bounded Borel function :math:`g(t, z)` on :math:`[0, 1] \times
    \mathbb{R}^d`, the test functions of the occupation estimates.

    :param name: identifier used in catalogs, logs and artifacts
    :type name: str
    :param dimension: spatial dimension :math:`d`
    :type dimension: int
    :param evaluate: vectorised map ``(t, z) -> g``; ``z`` has shape
                     ``(..., d)`` and ``t`` broadcasts against ``z[..., 0]``
    :type evaluate: Callable
    :param bound: declared sup-norm, at most 1 (2 for difference fields)
    :type bound: float
    :param smoothness: one of ``smooth``, ``lipschitz``, ``discontinuous``
    :type smoothness: str
    :param profile: step profile for one-dimensional time-homogeneous
                    piecewise-constant fields
    :type profile: StepProfile, optional
    :param lp_norm: map :math:`p \mapsto \|g\|_{L^p([0,1]\times\mathbb{R}^d)}`
    :type lp_norm: Callable, optional
    :param difference: whether the field is a difference of two shifts
    :type difference: bool
    """

    name: str
    dimension: int
    evaluate: Evaluator = field(repr=False)
    bound: float = 1.0
    smoothness: str = "discontinuous"
    profile: Optional[StepProfile] = None
    lp_norm: Optional[Callable[[float], float]] = field(default=None, repr=False)
    difference: bool = False

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidDimensionError(self.dimension)
        if self.smoothness not in SMOOTHNESS_TAGS:
            raise ValueError(
                f"Invalid smoothness tag: {self.smoothness}. "
                f"Valid tags are {', '.join(SMOOTHNESS_TAGS)}"
            )
        limit = 2.0 if self.difference else 1.0
        if not 0.0 <= self.bound <= limit:
            raise FieldBoundError(self.name, self.bound, limit)

    def eval(self, t: Union[float, np.ndarray], z: Union[float, np.ndarray]):
        r"""
        Evaluate the field.

        :param t: time(s)
        :type t: float or numpy.ndarray
        :param z: point(s) of shape ``(..., d)``; a scalar is accepted for d = 1
        :type z: float or numpy.ndarray
        :return: field values of shape ``z.shape[:-1]``
        :rtype: numpy.ndarray
        """
        z = np.asarray(z, dtype=np.float64)
        if z.ndim == 0:
            z = z[None]
        return self.evaluate(np.asarray(t, dtype=np.float64), z)


@dataclass(frozen=True)
class DriftField:
    r"""
    A bounded Borel drift :math:`f(t, x)` from :math:`[0, 1] \times
    \mathbb{R}^d` to :math:`\mathbb{R}^d` with :math:`|f| \leq 1`.

    :param name: identifier used in catalogs, logs and artifacts
    :type name: str
    :param dimension: spatial dimension :math:`d`
    :type dimension: int
    :param evaluate: vectorised map ``(t, x) -> f`` returning shape ``(..., d)``
    :type evaluate: Callable
    :param bound: declared sup-norm, at most 1
    :type bound: float
    :param smoothness: one of ``smooth``, ``lipschitz``, ``discontinuous``
    :type smoothness: str
    """

    name: str
    dimension: int
    evaluate: Evaluator = field(repr=False)
    bound: float = 1.0
    smoothness: str = "discontinuous"

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidDimensionError(self.dimension)
        if self.smoothness not in SMOOTHNESS_TAGS:
            raise ValueError(f"Invalid smoothness tag: {self.smoothness}.")
        if not 0.0 <= self.bound <= 1.0:
            raise FieldBoundError(self.name, self.bound, 1.0)

    def eval(self, t: Union[float, np.ndarray], x: Union[float, np.ndarray]):
        r"""
        Evaluate the drift; the result has the shape of ``x``.
        """
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 0:
            x = x[None]
        return self.evaluate(np.asarray(t, dtype=np.float64), x)


def _along_first_axis(g: ScalarField, t, x):
    values = g.evaluate(t, x)
    out = np.zeros(np.shape(values) + (g.dimension,))
    out[..., 0] = values
    return out


def as_drift(g: ScalarField) -> DriftField:
    r"""
    Lift a scalar field to the drift :math:`f(t, x) = g(t, x)\, e_1`.

    :param g: a field bounded by 1
    :type g: ScalarField
    :rtype: DriftField
    """
    return DriftField(
        name=g.name,
        dimension=g.dimension,
        evaluate=functools.partial(_along_first_axis, g),
        bound=g.bound,
        smoothness=g.smoothness,
    )


def _shifted_difference(g: ScalarField, x: np.ndarray, y: np.ndarray, t, z):
    return g.evaluate(t, z + x) - g.evaluate(t, z + y)


def difference_field(
    g: ScalarField, x: Union[float, Sequence[float]], y: Union[float, Sequence[float]]
) -> ScalarField:
    r"""
    The field :math:`h(t, z) = g(t, z + x) - g(t, z + y)`, bounded by 2.

    :param g: the field being differenced
    :type g: ScalarField
    :param x: first shift, a point of :math:`\mathbb{R}^d`
    :param y: second shift, a point of :math:`\mathbb{R}^d`
    :rtype: ScalarField
    """
    x_arr = np.broadcast_to(np.asarray(x, dtype=np.float64), (g.dimension,)).copy()
    y_arr = np.broadcast_to(np.asarray(y, dtype=np.float64), (g.dimension,)).copy()
    profile = None
    if g.profile is not None:
        profile = g.profile.shift(float(x_arr[0])) - g.profile.shift(float(y_arr[0]))
    return ScalarField(
        name=f"{g.name}(z{_format_shift(x_arr)})-{g.name}(z{_format_shift(y_arr)})",
        dimension=g.dimension,
        evaluate=functools.partial(_shifted_difference, g, x_arr, y_arr),
        bound=2.0 * g.bound,
        smoothness=g.smoothness,
        profile=profile,
        difference=True,
    )


def _format_shift(shift: np.ndarray) -> str:
    if not np.any(shift):
        return ""
    return "+(" + ",".join(f"{v:g}" for v in shift) + ")"


def _window(g: ScalarField, a: float, length: float, anchor: np.ndarray, s, z):
    return g.evaluate(a + np.asarray(s) * length, anchor + math.sqrt(length) * z)


def window_field(
    g: ScalarField, a: float, length: float, anchor: Sequence[float]
) -> ScalarField:
    r"""
    The field :math:`h(s, z) = g(a + s l, W(a) + l^{1/2} z)` which carries an
    occupation integral over :math:`[a, a + l]` onto [0, 1] for the rescaled
    path of :meth:`pypathwise.DyadicPath.rescale_window`.

    :param g: the original field
    :type g: ScalarField
    :param a: left end of the window
    :type a: float
    :param length: window length :math:`l`
    :type length: float
    :param anchor: the path position :math:`W(a)`
    :type anchor: Sequence[float]
    :rtype: ScalarField
    """
    anchor_arr = np.asarray(anchor, dtype=np.float64).reshape(g.dimension)
    return ScalarField(
        name=f"{g.name}@[{a:g},{a + length:g}]",
        dimension=g.dimension,
        evaluate=functools.partial(_window, g, a, length, anchor_arr),
        bound=g.bound,
        smoothness=g.smoothness,
        difference=g.difference,
    )


class FieldCatalog:
    r"""
    The built-in drifts and test functions.

    Names carrying a parameter spell it out: ``const_0.5`` is the constant
    0.5 and ``checkerboard_4`` oscillates at scale :math:`2^{-4}`.

    Drifts are the scalar fields lifted along the first axis, so in
    dimension :math:`d > 1` the drift ``const_c`` is :math:`c\, e_1` and not
    the vector :math:`(c, \ldots, c)`; this keeps :math:`|f| \leq 1`.
    """

    NAMES = (
        "zero",
        "const_<c>",
        "sign",
        "checkerboard_<m>",
        "radial_step",
        "lip_sin",
        "time_flip",
        "box",
        "gauss_bump",
        "one",
    )

    _CONST = re.compile(r"^const_(-?\d+(?:\.\d*)?(?:[eE]-?\d+)?)$")
    _CHECKERBOARD = re.compile(r"^checkerboard_(\d+)$")

    def scalar(self, name: str, dimension: int = 1) -> ScalarField:
        r"""
        Build the named scalar field.

        :param name: catalog name
        :type name: str
        :param dimension: spatial dimension
        :type dimension: int
        :rtype: ScalarField
        :raises UnknownFieldError: for names outside the catalog
        :raises FieldBoundError: for constants with :math:`|c| > 1`
        """
        if dimension < 1:
            raise InvalidDimensionError(dimension)
        one_d = dimension == 1
        simple: Dict[str, ScalarField] = {
            "zero": ScalarField(
                "zero",
                dimension,
                _zero,
                bound=0.0,
                smoothness="smooth",
                profile=StepProfile((), (0.0,)) if one_d else None,
                lp_norm=_zero_norm,
            ),
            "sign": ScalarField(
                "sign",
                dimension,
                _sign,
                profile=StepProfile((0.0,), (-1.0, 1.0)) if one_d else None,
                lp_norm=_infinite_norm,
            ),
            "radial_step": ScalarField(
                "radial_step",
                dimension,
                _radial_step,
                profile=StepProfile((-1.0, 1.0), (-1.0, 1.0, -1.0)) if one_d else None,
                lp_norm=_infinite_norm,
            ),
            "lip_sin": ScalarField(
                "lip_sin",
                dimension,
                _lip_sin,
                smoothness="smooth",
                lp_norm=_infinite_norm,
            ),
            "time_flip": ScalarField(
                "time_flip", dimension, _time_flip, lp_norm=_infinite_norm
            ),
            "box": ScalarField(
                "box",
                dimension,
                _box,
                profile=StepProfile((-1.0, 1.0), (0.0, 1.0, 0.0)) if one_d else None,
                lp_norm=functools.partial(_box_norm, dimension),
            ),
            "gauss_bump": ScalarField(
                "gauss_bump",
                dimension,
                _gauss_bump,
                smoothness="smooth",
                lp_norm=functools.partial(_gauss_bump_norm, dimension),
            ),
            "one": ScalarField(
                "one",
                dimension,
                functools.partial(_constant, 1.0),
                smoothness="smooth",
                profile=StepProfile((), (1.0,)) if one_d else None,
                lp_norm=_infinite_norm,
            ),
        }
        if name in simple:
            return simple[name]

        match = self._CONST.match(name)
        if match:
            c = float(match.group(1))
            if abs(c) > 1.0:
                raise FieldBoundError(name, abs(c), 1.0)
            return ScalarField(
                name,
                dimension,
                functools.partial(_constant, c),
                bound=abs(c),
                smoothness="smooth",
                profile=StepProfile((), (c,)) if one_d else None,
                lp_norm=_zero_norm if c == 0.0 else _infinite_norm,
            )

        match = self._CHECKERBOARD.match(name)
        if match:
            return ScalarField(
                name,
                dimension,
                functools.partial(_checkerboard, int(match.group(1))),
                lp_norm=_infinite_norm,
            )

        raise UnknownFieldError(name, self.NAMES)

    def drift(self, name: str, dimension: int = 1) -> DriftField:
        r"""
        Build the named field as a drift acting along the first axis.
        In dimension :math:`d > 1`, ``const_c`` becomes :math:`c\, e_1`.

        :rtype: DriftField
        """
        return as_drift(self.scalar(name, dimension))


def catalog(
    name: str, dimension: int = 1, drift: bool = False
) -> Union[ScalarField, DriftField]:
    r"""
    Look up a built-in field by name.

    :param name: catalog name, see :attr:`FieldCatalog.NAMES`
    :type name: str
    :param dimension: spatial dimension
    :type dimension: int
    :param drift: return the drift view instead of the scalar field
    :type drift: bool
    :rtype: ScalarField or DriftField
    """
    fields = FieldCatalog()
    if drift:
        return fields.drift(name, dimension)
    return fields.scalar(name, dimension)


def count_bound_violations(
    g: Union[ScalarField, DriftField], samples: int, seed: int, radius: float = 2.0
) -> int:
    r"""
    Count sampled points :math:`(t, x) \in [0,1] \times [-r, r]^d` where the
    field exceeds its declared bound.

    :rtype: int
    """
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 1.0, samples)
    x = rng.uniform(-radius, radius, (samples, g.dimension))
    values = np.asarray(g.eval(t, x))
    if isinstance(g, DriftField):
        magnitude = np.linalg.norm(values, axis=-1)
    else:
        magnitude = np.abs(values)
    return int(np.count_nonzero(magnitude > g.bound))
