"""Linear one-port loads built from R, L and C elements.

A network is either a series/parallel tree of elements or an
``AdmittanceTable`` with tabulated per-harmonic admittances. Admittances are
evaluated at ``n * omega`` with the usual rules::

    Y_R = 1/R    Y_L = 1/(j n w L)    Y_C = j n w C

At DC (n = 0) an inductor is a short and a capacitor is open; the tree
evaluator carries these limits through so that, for example, a capacitor in
series with an inductor is a valid open circuit at DC.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping, Union

from cpcpower.errors import MissingHarmonicError, SingularAdmittanceError
from cpcpower.spectrum import HarmonicSignal

INF = complex(math.inf, 0.0)


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Resistor:
    R: float

    def __post_init__(self):
        object.__setattr__(self, "R", _positive("R", self.R))


@dataclass(frozen=True)
class Inductor:
    L: float

    def __post_init__(self):
        object.__setattr__(self, "L", _positive("L", self.L))


@dataclass(frozen=True)
class Capacitor:
    C: float

    def __post_init__(self):
        object.__setattr__(self, "C", _positive("C", self.C))


@dataclass(frozen=True)
class Series:
    children: tuple

    def __post_init__(self):
        children = tuple(self.children)
        if not children:
            raise ValueError("a series combination needs at least one element")
        object.__setattr__(self, "children", children)


@dataclass(frozen=True)
class Parallel:
    """Parallel combination; an empty one is an open circuit."""

    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class AdmittanceTable:
    """Tabulated admittance per harmonic order (0 is DC); omega is ignored."""

    values: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, y in self.values.items():
            if int(n) != n or n < 0:
                raise ValueError(f"harmonic orders must be nonnegative integers, got {n!r}")
            y = complex(y)
            if not cmath.isfinite(y):
                raise ValueError(f"admittance at order {n} must be finite")
            clean[int(n)] = y
        object.__setattr__(self, "values", dict(sorted(clean.items())))


Network = Union[Resistor, Inductor, Capacitor, Series, Parallel, AdmittanceTable]


def _invert(y: complex) -> complex:
    # 1/0 -> inf, 1/inf -> 0
    if cmath.isinf(y):
        return 0j
    if y == 0:
        return INF
    return 1 / y


def _admittance(net: Network, n: int, omega: float) -> complex:
    w = n * omega
    if isinstance(net, Resistor):
        return complex(1 / net.R)
    if isinstance(net, Inductor):
        return INF if w == 0 else 1 / (1j * w * net.L)
    if isinstance(net, Capacitor):
        return 1j * w * net.C
    if isinstance(net, AdmittanceTable):
        try:
            return net.values[n]
        except KeyError:
            raise MissingHarmonicError(f"admittance table has no entry for order {n}") from None
    if isinstance(net, Parallel):
        ys = [_admittance(c, n, omega) for c in net.children]
        if any(cmath.isinf(y) for y in ys):
            return INF
        return complex(sum(ys))
    if isinstance(net, Series):
        zs = [_invert(_admittance(c, n, omega)) for c in net.children]
        if any(cmath.isinf(z) for z in zs):
            return 0j
        return _invert(complex(sum(zs)))
    raise TypeError(f"not a network: {net!r}")


def admittance(net: Network, n: int, omega: float) -> complex:
    """Complex admittance ``G + jB`` of ``net`` at harmonic order ``n``.

    Raises ``SingularAdmittanceError`` when the admittance is unbounded, e.g.
    an inductor across a DC source or a series LC branch at resonance.
    """
    if n < 0 or omega < 0:
        raise ValueError("harmonic order and omega must be nonnegative")
    y = _admittance(net, n, omega)
    if not cmath.isfinite(y):
        raise SingularAdmittanceError(f"admittance is unbounded at order {n} (omega={omega})")
    return y


def steady_state_current(net: Network, u: HarmonicSignal) -> HarmonicSignal:
    """Periodic steady-state current drawn by ``net`` from voltage ``u``."""
    phasors = {n: admittance(net, n, u.omega) * u.phasor(n) for n in u.orders}
    dc = admittance(net, 0, u.omega).real * u.dc if u.dc else 0.0
    return HarmonicSignal.from_phasors(u.omega, phasors, dc)


def parallel_with(net: Network, other: Network | None) -> Network:
    if other is None:
        return net
    return Parallel((net, other))


def series(*children: Network) -> Series:
    return Series(children)


def parallel(*children: Network) -> Parallel:
    return Parallel(children)
