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

from typing import Iterable, Optional


class PypathwiseError(ValueError):
    r"""
    Base class of every error raised by ``pypathwise``.

    :param message: explanation of the error
    :type message: str
    """

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        r"""
        String representation of the exception.

        :return: the error message
        :rtype: str
        """
        return f"{self.message}"


class InvalidLevelError(PypathwiseError):
    r"""
    Exception raised for a dyadic level outside the supported range.

    :param level: the offending level
    :type level: int
    :param maximum: the largest admissible level
    :type maximum: int
    :param message: explanation of the error, optional
    :type message: str, optional
    """

    def __init__(self, level: int, maximum: int, message: Optional[str] = None):
        self.level = level
        self.maximum = maximum
        if message is None:
            message = (
                f"Invalid dyadic level: {level}. "
                f"Levels must lie between 0 and {maximum}."
            )
        super().__init__(message)


class InvalidDimensionError(PypathwiseError):
    r"""
    Exception raised when a spatial dimension is not a positive integer.

    :param dimension: the offending dimension
    :type dimension: int
    """

    def __init__(self, dimension: int, message: Optional[str] = None):
        self.dimension = dimension
        if message is None:
            message = (
                f"Invalid dimension: {dimension}. "
                "The dimension must be a positive integer."
            )
        super().__init__(message)


class FrozenPathError(PypathwiseError):
    r"""
    Exception raised when a frozen path is asked to change.
    """

    def __init__(
        self,
        message: str = (
            "The path is frozen and cannot be refined. "
            "Generate a new path from its seed instead."
        ),
    ):
        super().__init__(message)


class MisalignedWindowError(PypathwiseError):
    r"""
    Exception raised for a time window that is not aligned to a dyadic grid.

    :param a: left end of the window
    :type a: float
    :param b: right end of the window
    :type b: float
    :param reason: what exactly is wrong with the window
    :type reason: str
    """

    def __init__(self, a: float, b: float, reason: str):
        self.a = a
        self.b = b
        super().__init__(f"Misaligned window [{a}, {b}]: {reason}")


class UnknownFieldError(PypathwiseError):
    r"""
    Exception raised for a field name missing from the catalog.

    :param name: the requested name
    :type name: str
    :param known: names available in the catalog
    :type known: Iterable[str]
    """

    def __init__(self, name: str, known: Iterable[str]):
        self.name = name
        super().__init__(
            f"Unknown field: {name}. Valid fields are {', '.join(known)}"
        )


class FieldBoundError(PypathwiseError):
    r"""
    Exception raised when a field declares or violates an inadmissible bound.
    """

    def __init__(self, name: str, bound: float, limit: float):
        self.name = name
        self.bound = bound
        super().__init__(
            f"Field {name} has bound {bound}, "
            f"but drifts and test functions must be bounded by {limit}."
        )


class OversamplingError(PypathwiseError):
    r"""
    Exception raised when the quadrature level is too coarse for an interval.

    :param quad_level: the requested quadrature level
    :type quad_level: int
    :param n: the level of the dyadic interval
    :type n: int
    """

    OVERSAMPLING = 6

    def __init__(self, quad_level: int, n: int):
        self.quad_level = quad_level
        self.n = n
        super().__init__(
            f"Quadrature level {quad_level} is below the oversampling floor "
            f"{n} + {self.OVERSAMPLING} for intervals of level {n}."
        )


class InsufficientPathLevelError(PypathwiseError):
    r"""
    Exception raised when a path is coarser than the requested quadrature.
    """

    def __init__(self, path_level: int, quad_level: int):
        self.path_level = path_level
        self.quad_level = quad_level
        super().__init__(
            f"The path is stored at level {path_level}, "
            f"but quadrature needs level {quad_level}. Refine the path first."
        )


class InvalidPartitionError(PypathwiseError):
    r"""
    Exception raised for an empty or non-increasing partition.
    """

    def __init__(self, reason: str):
        super().__init__(f"Invalid partition: {reason}")


class UnknownPartitionKindError(PypathwiseError):
    r"""
    Exception raised for a partition kind the factory does not know.
    """

    VALID_KINDS = ("uniform", "random_dyadic", "adversarial_extrema")

    def __init__(self, kind: str):
        self.kind = kind
        super().__init__(
            f"Unknown partition kind: {kind}. "
            f"Valid kinds are {', '.join(self.VALID_KINDS)}"
        )


class OddMomentError(PypathwiseError):
    r"""
    Exception raised when a moment bound is requested for an odd exponent.
    """

    def __init__(self, p: int):
        self.p = p
        super().__init__(
            f"Invalid moment order p={p}: "
            "the moment bound holds for even positive integers p only."
        )


class MomentRangeError(PypathwiseError):
    r"""
    Exception raised for even exponents outside the supported range.
    """

    def __init__(self, p: int, low: int = 2, high: int = 8):
        self.p = p
        super().__init__(
            f"Moment order p={p} is outside the supported range [{low}, {high}]."
        )


class IntegrabilityError(PypathwiseError):
    r"""
    Exception raised when the integrability hypothesis of the L2 bound fails.
    """

    def __init__(self, message: str):
        super().__init__(message)


class InvalidKernelError(PypathwiseError):
    r"""
    Exception raised for a kernel name outside {E, B, D}.
    """

    def __init__(self, which: str):
        self.which = which
        super().__init__(f"Unknown kernel: {which}. Valid kernels are E, B, D")


class NonPositiveTimeError(PypathwiseError):
    r"""
    Exception raised when a heat kernel is evaluated at t <= 0.
    """

    def __init__(self, t: float):
        self.t = t
        super().__init__(f"Heat kernels need a positive time, got t={t}.")


class WordLengthError(PypathwiseError):
    r"""
    Exception raised for a word length outside [1, 20].
    """

    def __init__(self, k: int, low: int = 1, high: int = 20):
        self.k = k
        super().__init__(f"Word length k={k} is outside the range [{low}, {high}].")


class OracleUnavailableError(PypathwiseError):
    r"""
    Exception raised when no deterministic oracle exists for a field.
    """

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"No heat-kernel oracle is available for field {name}: "
            "it needs a one-dimensional, time-homogeneous step profile."
        )


class ConfigError(PypathwiseError):
    r"""
    Exception raised for an invalid run configuration.
    """

    def __init__(self, message: str):
        super().__init__(f"Invalid configuration: {message}")


class PathFormatError(PypathwiseError):
    r"""
    Exception raised when a binary path dump cannot be decoded.
    """

    def __init__(self, reason: str):
        super().__init__(f"Invalid path file: {reason}")


class RegimeWarning(UserWarning):
    r"""
    Warning issued when an experiment runs outside the parameter range its
    estimate is stated for; the run still goes ahead.
    """


class InadmissibleStartError(PypathwiseError):
    r"""
    Exception raised when a Picard starting function leaves the admissible
    class: bounded by 1, zero at time 0 and Lipschitz with constant 1.
    """

    def __init__(self, reason: str):
        super().__init__(f"Inadmissible starting function: {reason}.")
