"""Scalar power quantities for a voltage/current pair.

Sign convention: per-harmonic reactive power is ``Q_n = Im{U_n * conj(I_n)}``,
positive for inductive loads even though their susceptance ``B_n`` is
negative. Iliovici's integral ``Q_I = (1/wT) * integral(u di)`` follows the
same orientation (anticlockwise Lissajous loop, lagging current, Q_I > 0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from cpcpower import cpc
from cpcpower.cpc import Decomposition, equivalent_conductance, support
from cpcpower.errors import NumericalConsistencyError, ZeroSourceError
from cpcpower.spectrum import HarmonicSignal, check_samples

RESISTIVE_TOL = 1e-12
RADICAND_TOL = 1e-9


def active_power(u: HarmonicSignal, i: HarmonicSignal) -> float:
    return u.inner(i)


def apparent_power(u: HarmonicSignal, i: HarmonicSignal) -> float:
    return u.rms() * i.rms()


def power_factor(u: HarmonicSignal, i: HarmonicSignal) -> float:
    s = apparent_power(u, i)
    if s == 0:
        raise ZeroSourceError("apparent power is zero; power factor undefined")
    return active_power(u, i) / s


def _sqrt_radicand(x: float, scale: float, what: str) -> float:
    if x < 0:
        if x < -RADICAND_TOL * max(scale, 1.0):
            raise NumericalConsistencyError(f"{what} radicand is negative: {x!r}")
        return 0.0
    return math.sqrt(x)


def budeanu_reactive(u: HarmonicSignal, i: HarmonicSignal) -> float:
    return sum((u.phasor(n) * i.phasor(n).conjugate()).imag for n in u.orders)


def budeanu(u: HarmonicSignal, i: HarmonicSignal) -> tuple[float, float]:
    """Budeanu reactive and distortion power ``(Q_B, D_B)``.

    ``D_B^2 = S^2 - P^2 - Q_B^2`` is evaluated as ``Q_F^2 - Q_B^2``, which is
    the same quantity without the cancellation of ``S^2 - P^2``.
    """
    qb = budeanu_reactive(u, i)
    s2 = apparent_power(u, i) ** 2
    db = _sqrt_radicand(fryze_reactive(u, i) ** 2 - qb**2, s2, "distortion power")
    return qb, db


def fryze_reactive(u: HarmonicSignal, i: HarmonicSignal) -> float:
    return u.rms() * (i - cpc.active_current(u, i)).rms()


def cs_residual_oracle(u: HarmonicSignal, i: HarmonicSignal, m: int = 512) -> float:
    """Square root of the Cauchy-Schwarz residual double integral.

    ``(1/2T^2) * iint (u(s) i(t) - u(t) i(s))^2 ds dt`` on an m-by-m
    trapezoid grid. Equals ``sqrt(S^2 - P^2)``; used as an independent check.
    """
    check_samples(m, max(u.max_order, i.max_order))
    _, us = u.sample(m)
    _, is_ = i.sample(m)
    kernel = np.outer(us, is_)
    kernel = kernel - kernel.T
    return math.sqrt(0.5 * np.mean(kernel * kernel))


def iliovici_per_harmonic(u: HarmonicSignal, i: HarmonicSignal, n: int) -> float:
    """``Q_In = (1/wT) * integral(u_n di/dt)``; equals ``n * Q_n``."""
    if n == 0:
        return 0.0
    return u.component(n).inner(i.differentiate()) / u.omega


def iliovici_total(u: HarmonicSignal, i: HarmonicSignal) -> float:
    return u.inner(i.differentiate()) / u.omega


def budeanu_iliovici_identity(u: HarmonicSignal, i: HarmonicSignal) -> tuple[float, float]:
    """``(Q_B, sum_n Q_In / n)``; the two agree for any pair."""
    return budeanu_reactive(u, i), sum(iliovici_per_harmonic(u, i, n) / n for n in u.orders)


def equivalent_susceptance(u: HarmonicSignal, i: HarmonicSignal) -> float:
    du = u.differentiate()
    norm2 = du.inner(du)
    if norm2 == 0:
        raise ZeroSourceError("equivalent susceptance needs AC content in the source voltage")
    return -(u.omega**2) * iliovici_total(u, i) / norm2


class CPCPowers(NamedTuple):
    D_s: float
    Q_r: float
    Q_i: float
    Q_s: float


def cpc_powers(u: HarmonicSignal, d: Decomposition) -> CPCPowers:
    un = u.rms()
    return CPCPowers(un * d.i_s.rms(), un * d.i_r.rms(), un * d.i_I.rms(), un * d.i_sr.rms())


def per_harmonic_measurements(u: HarmonicSignal, i: HarmonicSignal) -> dict[int, tuple[float, float]]:
    """Readings of the per-harmonic power meters: ``n -> (P_n, Q_n)``.

    ``P_n = <u_n, i>`` and ``Q_n = -(1/2pi) * integral(du_n/dt * i)``. The
    latter is Iliovici's per-harmonic integral, i.e. n times the Budeanu-style
    harmonic reactive power.
    """
    out = {}
    for n in support(u):
        un = u.component(n)
        out[n] = (un.inner(i), -un.differentiate().inner(i) / u.omega)
    return out


class Activity(enum.Enum):
    PASSIVE = "passive"
    ACTIVE = "active"


class Reactivity(enum.Enum):
    INDUCTIVE = "inductive"
    CAPACITIVE = "capacitive"
    RESISTIVE = "resistive"


class LoadCharacter(NamedTuple):
    activity: Activity
    reactivity: Reactivity

    def __str__(self):
        return f"{self.activity.value}-{self.reactivity.value}"


def classify_load(ge: float, be: float) -> LoadCharacter:
    activity = Activity.ACTIVE if ge < 0 else Activity.PASSIVE
    if abs(be) <= RESISTIVE_TOL:
        reactivity = Reactivity.RESISTIVE
    elif be < 0:
        reactivity = Reactivity.INDUCTIVE
    else:
        reactivity = Reactivity.CAPACITIVE
    return LoadCharacter(activity, reactivity)


class HarmonicPowers(NamedTuple):
    P: float
    Q: float
    Q_I: float
    G: float
    B: float


@dataclass(frozen=True)
class PowerReport:
    P: float
    S: float
    PF: float
    Q_B: float
    D_B: float
    Q_F: float
    D_s: float
    Q_r: float
    Q_i: float
    Q_s: float
    Q_I: float
    G_e: float
    B_e: float
    load_character: LoadCharacter
    per_harmonic: dict[int, HarmonicPowers] = field(default_factory=dict)

    @property
    def Y_e(self) -> complex:
        return complex(self.G_e, self.B_e)

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in SCALAR_FIELDS}
        d["load_character"] = str(self.load_character)
        d["per_harmonic"] = {str(n): h._asdict() for n, h in self.per_harmonic.items()}
        return d


SCALAR_FIELDS = ("P", "S", "PF", "Q_B", "D_B", "Q_F", "D_s", "Q_r", "Q_i", "Q_s", "Q_I", "G_e", "B_e")


def power_report(u: HarmonicSignal, i: HarmonicSignal) -> PowerReport:
    d = cpc.decompose(u, i)
    p = active_power(u, i)
    s = apparent_power(u, i)
    qb, db = budeanu(u, i)
    powers = cpc_powers(u, d)
    ge = equivalent_conductance(u, i)
    be = equivalent_susceptance(u, i) if u.orders else 0.0
    per = {}
    for n in support(u):
        un = u.component(n)
        q = (u.phasor(n) * i.phasor(n).conjugate()).imag
        per[n] = HarmonicPowers(
            P=un.inner(i),
            Q=q,
            Q_I=iliovici_per_harmonic(u, i, n),
            G=cpc.per_harmonic_conductance(u, i, n),
            B=cpc.per_harmonic_susceptance(u, i, n),
        )
    return PowerReport(
        P=p,
        S=s,
        PF=p / s if s else 0.0,
        Q_B=qb,
        D_B=db,
        Q_F=fryze_reactive(u, i),
        D_s=powers.D_s,
        Q_r=powers.Q_r,
        Q_i=powers.Q_i,
        Q_s=powers.Q_s,
        Q_I=iliovici_total(u, i),
        G_e=ge,
        B_e=be,
        load_character=classify_load(ge, be),
        per_harmonic=per,
    )
