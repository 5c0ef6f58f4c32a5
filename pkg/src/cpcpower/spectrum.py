"""Periodic band-limited signals held as a DC value plus rms-scaled harmonics.

A harmonic of order ``n`` with coefficients ``(a, b)`` contributes

    s_n(t) = sqrt(2) * (a * cos(n*w*t) + b * sin(n*w*t))

so its rms value is ``hypot(a, b)``. The matching complex rms phasor is
``a - 1j*b``, which makes ``I = Y * U`` hold per harmonic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from cpcpower.errors import OmegaMismatchError, SamplingError

PRUNE_TOL = 1e-12
DEFAULT_SAMPLES = 4096

SQRT2 = math.sqrt(2.0)


def to_phasor(a: float, b: float) -> complex:
    return complex(a, -b)


def from_phasor(z: complex) -> tuple[float, float]:
    return (z.real, -z.imag)


@dataclass(frozen=True)
class HarmonicSignal:
    """Immutable periodic signal.

    ``terms`` maps harmonic order (n >= 1) to the rms-scaled pair ``(a_n, b_n)``.
    Orders whose coefficients are both below ``PRUNE_TOL`` are dropped on
    construction.
    """

    omega: float
    dc: float = 0.0
    terms: Mapping[int, tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        omega = float(self.omega)
        if not (math.isfinite(omega) and omega > 0):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")
        dc = float(self.dc)
        if not math.isfinite(dc):
            raise ValueError("dc value must be finite")
        if abs(dc) < PRUNE_TOL:
            dc = 0.0
        clean = {}
        for n, (a, b) in sorted(self.terms.items()):
            if int(n) != n or n < 1:
                raise ValueError(f"harmonic orders must be positive integers, got {n!r}")
            a, b = float(a), float(b)
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ValueError(f"non-finite coefficient at order {n}")
            if abs(a) < PRUNE_TOL and abs(b) < PRUNE_TOL:
                continue
            clean[int(n)] = (a, b)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "dc", dc)
        object.__setattr__(self, "terms", clean)

    # construction helpers

    @classmethod
    def zero(cls, omega: float) -> HarmonicSignal:
        return cls(omega)

    @classmethod
    def from_phasors(
        cls, omega: float, phasors: Mapping[int, complex], dc: float = 0.0
    ) -> HarmonicSignal:
        return cls(omega, dc, {n: from_phasor(complex(z)) for n, z in phasors.items()})

    # introspection

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega

    @property
    def orders(self) -> tuple[int, ...]:
        """AC orders present in the signal, ascending."""
        return tuple(self.terms)

    @property
    def max_order(self) -> int:
        return max(self.terms, default=0)

    def phasor(self, n: int) -> complex:
        """Complex rms phasor at order ``n`` (``dc`` for n = 0, zero if absent)."""
        if n == 0:
            return complex(self.dc)
        a, b = self.terms.get(n, (0.0, 0.0))
        return to_phasor(a, b)

    def phasors(self) -> dict[int, complex]:
        return {n: to_phasor(a, b) for n, (a, b) in self.terms.items()}

    def component(self, n: int) -> HarmonicSignal:
        """The single-order part ``s_n`` (n = 0 selects the DC value)."""
        if n == 0:
            return HarmonicSignal(self.omega, self.dc)
        if n in self.terms:
            return HarmonicSignal(self.omega, 0.0, {n: self.terms[n]})
        return HarmonicSignal(self.omega)

    def is_zero(self) -> bool:
        return self.dc == 0.0 and not self.terms

    # algebra

    def _check_omega(self, other: HarmonicSignal) -> None:
        if not math.isclose(self.omega, other.omega, rel_tol=1e-12):
            raise OmegaMismatchError(
                f"fundamental frequencies differ: {self.omega} vs {other.omega}"
            )

    def __add__(self, other: HarmonicSignal) -> HarmonicSignal:
        if not isinstance(other, HarmonicSignal):
            return NotImplemented
        self._check_omega(other)
        terms = dict(self.terms)
        for n, (a, b) in other.terms.items():
            a0, b0 = terms.get(n, (0.0, 0.0))
            terms[n] = (a0 + a, b0 + b)
        return HarmonicSignal(self.omega, self.dc + other.dc, terms)

    def __mul__(self, k: float) -> HarmonicSignal:
        if not isinstance(k, (int, float, np.floating, np.integer)):
            return NotImplemented
        k = float(k)
        return HarmonicSignal(
            self.omega, self.dc * k, {n: (a * k, b * k) for n, (a, b) in self.terms.items()}
        )

    __rmul__ = __mul__

    def __neg__(self) -> HarmonicSignal:
        return self * -1.0

    def __sub__(self, other: HarmonicSignal) -> HarmonicSignal:
        if not isinstance(other, HarmonicSignal):
            return NotImplemented
        return self + (-other)

    def differentiate(self) -> HarmonicSignal:
        w = self.omega
        return HarmonicSignal(
            w, 0.0, {n: (n * w * b, -n * w * a) for n, (a, b) in self.terms.items()}
        )

    def inner(self, other: HarmonicSignal) -> float:
        """Mean of the product of two signals over one period."""
        self._check_omega(other)
        acc = self.dc * other.dc
        for n, (a1, b1) in self.terms.items():
            if n in other.terms:
                a2, b2 = other.terms[n]
                acc += a1 * a2 + b1 * b2
        return acc

    def rms(self) -> float:
        return math.sqrt(self.dc**2 + sum(a * a + b * b for a, b in self.terms.values()))

    # evaluation

    def evaluate(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, self.dc, dtype=float)
        for n, (a, b) in self.terms.items():
            phase = n * self.omega * t
            out += SQRT2 * (a * np.cos(phase) + b * np.sin(phase))
        return out

    def sample(self, m: int = DEFAULT_SAMPLES) -> tuple[np.ndarray, np.ndarray]:
        """``m`` equally spaced samples over one period, starting at t = 0.

        Returns ``(t, values)``. The end point t = T is not repeated.
        """
        check_samples(m, self.max_order)
        t = np.arange(m) * (self.period / m)
        return t, self.evaluate(t)


def check_samples(m: int, max_order: int) -> None:
    if int(m) != m or m < 1:
        raise SamplingError(f"sample count must be a positive integer, got {m!r}")
    if m <= 2 * max_order:
        raise SamplingError(
            f"{m} samples cannot resolve harmonic order {max_order}; need more than {2 * max_order}"
        )


def rms(s: HarmonicSignal) -> float:
    return s.rms()


def add(s1: HarmonicSignal, s2: HarmonicSignal) -> HarmonicSignal:
    return s1 + s2


def scale(s: HarmonicSignal, k: float) -> HarmonicSignal:
    return s * k


def differentiate(s: HarmonicSignal) -> HarmonicSignal:
    return s.differentiate()


def inner(s1: HarmonicSignal, s2: HarmonicSignal) -> float:
    return s1.inner(s2)


def sample(s: HarmonicSignal, m: int = DEFAULT_SAMPLES) -> tuple[np.ndarray, np.ndarray]:
    return s.sample(m)


def total(signals: Iterable[HarmonicSignal], omega: float) -> HarmonicSignal:
    acc = HarmonicSignal(omega)
    for s in signals:
        acc = acc + s
    return acc
