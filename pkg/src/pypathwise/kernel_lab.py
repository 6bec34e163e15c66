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

import itertools
import math
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

import numpy as np
from scipy import integrate  # type: ignore
from scipy.special import ndtr, roots_legendre  # type: ignore

from .drift_fields import ScalarField, StepProfile
from .exceptions import (
    InvalidKernelError,
    NonPositiveTimeError,
    OracleUnavailableError,
    WordLengthError,
)
from .logger import logger_decorator

KERNELS = ("E", "B", "D")
ALPHABET = ("E", "B", "D")

# the kernels are integrated over [-12 sqrt(t), 12 sqrt(t)]
WINDOW = 12.0
# |w| beyond this carries Gaussian mass below 1e-22
ORACLE_CUTOFF = 10.0

B_MASS = math.sqrt(2.0 / math.pi)
D_MASS = 4.0 * math.exp(-0.5) / math.sqrt(2.0 * math.pi)


class HeatKernel:
    r"""
    The heat kernel and its first two spatial derivatives,

    .. math::
        E(t, z) = (2 \pi t)^{-1/2} e^{-z^2 / 2t}

        B(t, z) = \partial_z E(t, z) = -\frac{z}{t} E(t, z)

        D(t, z) = \partial_z^2 E(t, z)
                = \left(\frac{z^2}{t^2} - \frac{1}{t}\right) E(t, z)

    Under :math:`z \mapsto z \sqrt{t}` the :math:`L^1` masses scale as
    :math:`\int |B| = \sqrt{2/\pi}\, t^{-1/2}` and
    :math:`\int |D| = 4 \varphi(1)\, t^{-1}`.
    """

    def _check(self, which: str, t: float) -> None:
        if which not in KERNELS:
            raise InvalidKernelError(which)
        if not t > 0.0:
            raise NonPositiveTimeError(t)

    def evaluate(
        self, which: str, t: float, z: Union[float, np.ndarray]
    ) -> Union[float, np.ndarray]:
        r"""
        Evaluate one kernel.

        :param which: ``E``, ``B`` or ``D``
        :type which: str
        :param t: time, positive
        :type t: float
        :param z: point(s)
        :type z: float or numpy.ndarray
        :rtype: float or numpy.ndarray
        :raises InvalidKernelError: for other kernel names
        :raises NonPositiveTimeError: for :math:`t \leq 0`
        """
        self._check(which, t)
        z = np.asarray(z, dtype=np.float64)
        e = np.exp(-(z * z) / (2.0 * t)) / math.sqrt(2.0 * math.pi * t)
        if which == "E":
            value = e
        elif which == "B":
            value = -(z / t) * e
        else:
            value = ((z * z) / (t * t) - 1.0 / t) * e
        return float(value) if value.ndim == 0 else value

    def l1_mass(self, which: str, t: float) -> float:
        r"""
        :math:`\int_{\mathbb{R}} |K(t, z)|\,dz` by adaptive Gauss–Kronrod
        quadrature on :math:`[-12\sqrt{t}, 12\sqrt{t}]`, split at the sign
        changes of the kernels.

        :rtype: float
        """
        self._check(which, t)
        root = math.sqrt(t)
        value, _ = integrate.quad(
            lambda z: abs(self.evaluate(which, t, z)),
            -WINDOW * root,
            WINDOW * root,
            points=(-root, 0.0, root),
            epsabs=0.0,
            epsrel=1e-10,
            limit=200,
        )
        return value

    def finite_difference_errors(
        self, t: float, z: float, step: float = 1e-5
    ) -> Tuple[float, float]:
        r"""
        Relative errors of the closed forms of :math:`B` and :math:`D`
        against central differences of :math:`E` and :math:`B`.

        :rtype: Tuple[float, float]
        """
        b_fd = (self.evaluate("E", t, z + step) - self.evaluate("E", t, z - step)) / (
            2.0 * step
        )
        d_fd = (self.evaluate("B", t, z + step) - self.evaluate("B", t, z - step)) / (
            2.0 * step
        )
        b = self.evaluate("B", t, z)
        d = self.evaluate("D", t, z)
        scale = self.evaluate("E", t, z)
        return (
            abs(b - b_fd) / max(abs(b), scale / math.sqrt(t)),
            abs(d - d_fd) / max(abs(d), scale / t),
        )

    @logger_decorator
    def scaling_table(self, times: Sequence[float]) -> List[Dict[str, float]]:
        r"""
        Rows of :math:`t`, :math:`\int E`, :math:`t^{1/2} \int |B|` and
        :math:`t \int |D|`, next to the closed-form constants.

        :rtype: List[Dict[str, float]]
        """
        rows = []
        for t in times:
            row = {
                "t": float(t),
                "mass_E": self.l1_mass("E", t),
                "scaled_mass_B": math.sqrt(t) * self.l1_mass("B", t),
                "scaled_mass_D": t * self.l1_mass("D", t),
                "closed_form_B": B_MASS,
                "closed_form_D": D_MASS,
            }
            self.logger.info(  # type: ignore
                f"At t = {t}, the E mass is {row['mass_E']}, the scaled B mass "
                f"is {row['scaled_mass_B']} and the scaled D mass is "
                f"{row['scaled_mass_D']}."
            )
            rows.append(row)
        return rows


def kernel_eval(which: str, t: float, z: Union[float, np.ndarray]):
    r"""
    Shorthand for :meth:`HeatKernel.evaluate`.
    """
    return HeatKernel().evaluate(which, t, z)


def kernel_l1_mass(which: str, t: float) -> float:
    r"""
    Shorthand for :meth:`HeatKernel.l1_mass`.
    """
    return HeatKernel().l1_mass(which, t)


class WordEnumerator:
    r"""
    Words over :math:`\{E, B, D\}`.

    A word is allowed when deleting its ``B`` letters leaves
    :math:`(ED)^r`. The positions of the non-``B`` letters of an allowed
    word form a subset of even size, and every even-sized subset of
    :math:`\{1, \ldots, k\}` comes from exactly one allowed word, so there
    are :math:`2^{k-1}` of them.
    """

    MAX_LENGTH = 20
    BRUTE_FORCE_LENGTH = 12

    @staticmethod
    def is_allowed(word: str) -> bool:
        reduced = word.replace("B", "")
        return len(reduced) % 2 == 0 and reduced == "ED" * (len(reduced) // 2)

    def _check(self, k: int, high: int) -> None:
        if not 1 <= k <= high:
            raise WordLengthError(k, 1, high)

    def _extendable(self, prefix: str, remaining: int) -> bool:
        # some completion with `remaining` more letters passes the deletion test
        if self.is_allowed(prefix):
            return True
        return remaining > 0 and self.is_allowed(prefix + "D")

    @logger_decorator
    def allowed_words(self, k: int) -> List[str]:
        r"""
        All allowed words of length ``k``, in lexicographic order.

        Walks the tree of all :math:`3^k` words one letter at a time, drops
        prefixes that no completion can turn into an allowed word and keeps
        the leaves that pass the deletion test.

        :param k: word length, between 1 and 20
        :type k: int
        :rtype: List[str]
        :raises WordLengthError: for lengths out of range
        """
        self._check(k, self.MAX_LENGTH)
        letters = sorted(ALPHABET)
        words = [""]
        for position in range(k):
            remaining = k - position - 1
            words = [
                word + letter
                for word in words
                for letter in letters
                if self._extendable(word + letter, remaining)
            ]
        words = [word for word in words if self.is_allowed(word)]
        self.logger.info(  # type: ignore
            f"There are {len(words)} allowed words of length {k}."
        )
        return words

    def brute_force_count(self, k: int) -> int:
        r"""
        Count allowed words among all :math:`3^k` words; lengths up to 12.

        :rtype: int
        """
        self._check(k, self.BRUTE_FORCE_LENGTH)
        return sum(
            self.is_allowed("".join(word))
            for word in itertools.product(ALPHABET, repeat=k)
        )

    def subset_bijection(self, k: int) -> bool:
        r"""
        Check that the non-``B`` positions of the allowed words are exactly
        the even-sized subsets of :math:`\{0, \ldots, k - 1\}`, each once.

        :rtype: bool
        """
        subsets: List[FrozenSet[int]] = [
            frozenset(i for i, letter in enumerate(word) if letter != "B")
            for word in self.allowed_words(k)
        ]
        if any(len(s) % 2 for s in subsets) or len(set(subsets)) != len(subsets):
            return False
        return len(subsets) == 2 ** (k - 1)


def allowed_words(k: int) -> List[str]:
    r"""
    Shorthand for :meth:`WordEnumerator.allowed_words`.
    """
    return WordEnumerator().allowed_words(k)


def _semigroup(profile: StepProfile, zeta: np.ndarray, u: np.ndarray) -> np.ndarray:
    # (P_u h)(zeta) for a step profile h, in closed form through the normal CDF
    edges = (-math.inf,) + profile.breaks + (math.inf,)
    root = np.sqrt(u)
    total = np.zeros(np.broadcast_shapes(zeta.shape, root.shape))
    for lo, hi, value in zip(edges, edges[1:], profile.values):
        if value == 0.0:
            continue
        total += value * (ndtr((hi - zeta) / root) - ndtr((lo - zeta) / root))
    return total


def second_moment_oracle(
    h: Union[ScalarField, StepProfile], nodes: int = 64
) -> float:
    r"""
    The exact second moment of an occupation integral of a one-dimensional
    step function along Brownian motion started at 0,

    .. math::
        \mathbb{E}\left(\int_0^1 h(W(t))\,dt\right)^2
        = 2 \int_0^1 dt \int_0^t ds \iint h(\zeta) h(z)
          E(s, \zeta) E(t - s, z - \zeta)\,d\zeta\,dz

    The inner :math:`z` integral is done in closed form. With
    :math:`s = \sigma^2`, :math:`t - s = (1 - s)\tau^2` and
    :math:`\zeta = \sqrt{s}\, w` the rest becomes

    .. math::
        8 \int_0^1 \int_0^1 \sigma (1 - \sigma^2) \tau
        \int \varphi(w)\, h(\sqrt{s}\, w)\, (P_{t-s} h)(\sqrt{s}\, w)
        \,dw\,d\tau\,d\sigma

    which is integrated by tensor Gauss–Legendre rules, the :math:`w` rule
    split at the breakpoints of :math:`h`.

    :param h: a field carrying a step profile, or the profile itself
    :type h: ScalarField or StepProfile
    :param nodes: Gauss–Legendre nodes per dimension and piece
    :type nodes: int
    :rtype: float
    :raises OracleUnavailableError: for fields without a step profile
    """
    if isinstance(h, ScalarField):
        if h.profile is None:
            raise OracleUnavailableError(h.name)
        profile = h.profile
    else:
        profile = h

    x, weights = roots_legendre(nodes)
    unit = 0.5 * (x + 1.0)
    unit_weights = 0.5 * weights

    sigma = unit[:, None, None]
    tau = unit[None, :, None]
    s = sigma * sigma
    u = (1.0 - s) * tau * tau
    outer = (unit_weights[:, None] * unit_weights[None, :])[:, :, None] * (
        sigma * (1.0 - s) * tau
    )
    root_s = np.sqrt(s)

    edges = (-math.inf,) + profile.breaks + (math.inf,)
    total = 0.0
    for lo, hi, value in zip(edges, edges[1:], profile.values):
        if value == 0.0:
            continue
        w_lo = np.clip(lo / root_s, -ORACLE_CUTOFF, ORACLE_CUTOFF)
        w_hi = np.clip(hi / root_s, -ORACLE_CUTOFF, ORACLE_CUTOFF)
        half = 0.5 * (w_hi - w_lo)
        w = w_lo + half * (x[None, None, :] + 1.0)
        density = np.exp(-0.5 * w * w) / math.sqrt(2.0 * math.pi)
        inner = value * density * _semigroup(profile, root_s * w, u)
        total += float(np.sum(outer * half * weights[None, None, :] * inner))
    return 8.0 * total
