"""Lossless shunt compensators and their synthesis.

All compensators attach in parallel with the load at the source terminals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from cpcpower import cpc, metrics
from cpcpower.errors import (
    NonphysicalCompensatorError,
    UnsupportedCompensatorOrderError,
    ZeroSourceError,
)
from cpcpower.metrics import PowerReport
from cpcpower.netlist import Capacitor, Inductor, Network, Parallel, Series, steady_state_current
from cpcpower.spectrum import HarmonicSignal

NULL_TOL = 1e-12
VERIFY_TOL = 1e-6


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise NonphysicalCompensatorError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class ShuntCapacitor:
    C: float

    def __post_init__(self):
        _positive("C", self.C)

    def network(self) -> Network:
        return Capacitor(self.C)


@dataclass(frozen=True)
class ShuntInductor:
    L: float

    def __post_init__(self):
        _positive("L", self.L)

    def network(self) -> Network:
        return Inductor(self.L)


@dataclass(frozen=True)
class SeriesLC:
    L_x: float
    C_x: float

    def __post_init__(self):
        _positive("L_x", self.L_x)
        _positive("C_x", self.C_x)

    def network(self) -> Network:
        return Series((Inductor(self.L_x), Capacitor(self.C_x)))


Compensator = Union[ShuntCapacitor, ShuntInductor, SeriesLC]


def _require_ac(u: HarmonicSignal) -> None:
    if not u.orders:
        raise ZeroSourceError("source voltage has no AC content")


def shunt_for_budeanu_null(u: HarmonicSignal, load: Network) -> Optional[Compensator]:
    """Shunt element that drives Budeanu's reactive power of the total load to zero."""
    _require_ac(u)
    qb = metrics.budeanu_reactive(u, steady_state_current(load, u))
    if abs(qb) <= NULL_TOL:
        return None
    w = u.omega
    if qb > 0:
        # capacitor contributes -n*w*C*U_n^2 at each order
        return ShuntCapacitor(qb / (w * sum(n * abs(u.phasor(n)) ** 2 for n in u.orders)))
    # inductor contributes U_n^2 / (n*w*L)
    return ShuntInductor(sum(abs(u.phasor(n)) ** 2 / n for n in u.orders) / (w * -qb))


def shunt_from_equivalent_susceptance(u: HarmonicSignal, load: Network) -> Optional[Compensator]:
    """Shunt element that cancels the equivalent susceptance, i.e. zeroes Q_I."""
    _require_ac(u)
    be = metrics.equivalent_susceptance(u, steady_state_current(load, u))
    if abs(be) <= NULL_TOL:
        return None
    w = u.omega
    if be < 0:
        return ShuntCapacitor(-be / w)
    du = u.differentiate()
    ac = u - u.component(0)
    return ShuntInductor(w * ac.inner(ac) / (be * du.inner(du)))


def required_branch_susceptance(u: HarmonicSignal, i_sr: HarmonicSignal) -> dict[int, float]:
    """Per-order susceptance a shunt branch needs to draw ``-i_sr``."""
    out = {}
    for n in i_sr.orders:
        un = u.phasor(n)
        if un == 0:
            raise UnsupportedCompensatorOrderError(
                f"scattered reactive current at order {n} where the source voltage is zero"
            )
        out[n] = (1j * i_sr.phasor(n) / un).real
    return out


def series_lc_for_scattered_reactive(
    u: HarmonicSignal, i_sr: HarmonicSignal, omega: float | None = None
) -> SeriesLC:
    """Series LC branch whose steady-state current is ``-i_sr``.

    The branch susceptance ``n w C / (1 - n^2 w^2 L C)`` is matched at the two
    orders carrying ``i_sr``; this is linear in ``C`` and ``L*C``.
    """
    w = u.omega if omega is None else float(omega)
    orders = i_sr.orders
    if len(orders) != 2 or i_sr.dc:
        raise UnsupportedCompensatorOrderError(
            f"unsupported compensator order: series LC needs exactly two harmonics, got {list(orders)}"
        )
    b = required_branch_susceptance(u, i_sr)
    a = np.array([[n * w, b[n] * (n * w) ** 2] for n in orders])
    rhs = np.array([b[n] for n in orders])
    try:
        c, lc = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError:
        raise NonphysicalCompensatorError("series LC equations are singular") from None
    if not (c > 0 and lc > 0):
        raise NonphysicalCompensatorError(
            f"nonphysical compensator: C_x={c:.6g}, L_x*C_x={lc:.6g}"
        )
    comp = SeriesLC(L_x=float(lc / c), C_x=float(c))

    branch = steady_state_current(comp.network(), u)
    err = (branch + i_sr).rms()
    if err > VERIFY_TOL * max(i_sr.rms(), 1.0):
        raise NonphysicalCompensatorError(
            f"series LC branch misses the target current by rms {err:.3g}"
        )
    return comp


def compensated_network(load: Network, compensators: Iterable[Compensator | None]) -> Network:
    comps = [c.network() for c in compensators if c is not None]
    if not comps:
        return load
    return Parallel((load, *comps))


def evaluate_with(
    u: HarmonicSignal, load: Network, compensators: Iterable[Compensator | None] = ()
) -> PowerReport:
    net = compensated_network(load, compensators)
    return metrics.power_report(u, steady_state_current(net, u))


def full_compensation(u: HarmonicSignal, load: Network) -> tuple[Optional[Compensator], SeriesLC]:
    """Equivalent-susceptance shunt plus the series LC for what is left."""
    shunt = shunt_from_equivalent_susceptance(u, load)
    net = compensated_network(load, [shunt])
    i_sr = cpc.scattered_reactive_current(u, steady_state_current(net, u))
    return shunt, series_lc_for_scattered_reactive(u, i_sr)
