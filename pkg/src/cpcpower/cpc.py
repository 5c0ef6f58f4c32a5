"""Orthogonal decomposition of a load current against its supply voltage.

The time-domain path projects the current onto the voltage harmonics
``u_n`` (conductive part) and onto their derivatives ``du_n/dt`` (reactive
part). Everything is evaluated spectrally through ``HarmonicSignal.inner``;
sampled quadrature is only used by the test oracles.

The hybrid path (``hybrid_decomposition``) builds the same currents from the
network admittances ``Y_n = G_n + jB_n`` and serves as a cross-check.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from cpcpower.errors import MissingHarmonicError, ZeroSourceError
from cpcpower.netlist import Network, admittance
from cpcpower.spectrum import HarmonicSignal, total

RESIDUAL_WARN_RATIO = 1e-6


class ResidualCurrentWarning(UserWarning):
    """Current has content outside the harmonic support of the voltage."""


def support(u: HarmonicSignal) -> tuple[int, ...]:
    """Orders present in ``u`` including 0 when it has a DC value."""
    return ((0,) if u.dc else ()) + u.orders


def _project(i: HarmonicSignal, v: HarmonicSignal) -> HarmonicSignal:
    return v * (i.inner(v) / v.inner(v))


def _require_source(u: HarmonicSignal) -> float:
    norm2 = u.inner(u)
    if norm2 == 0:
        raise ZeroSourceError("source voltage has zero rms value")
    return norm2


def equivalent_conductance(u: HarmonicSignal, i: HarmonicSignal) -> float:
    return u.inner(i) / _require_source(u)


def active_current(u: HarmonicSignal, i: HarmonicSignal) -> HarmonicSignal:
    return u * equivalent_conductance(u, i)


def per_harmonic_conductance(u: HarmonicSignal, i: HarmonicSignal, n: int) -> float:
    """``G_n``: projection coefficient of ``i`` on the n-th voltage component."""
    un = u.component(n)
    if un.is_zero():
        raise MissingHarmonicError(f"order {n} is not present in the source voltage")
    return un.inner(i) / un.inner(un)


def per_harmonic_susceptance(u: HarmonicSignal, i: HarmonicSignal, n: int) -> float:
    """``B_n`` from the projection of ``i`` on ``du_n/dt``; ``B_0`` is 0."""
    if n == 0:
        if not u.dc:
            raise MissingHarmonicError("source voltage has no DC value")
        return 0.0
    if n not in u.terms:
        raise MissingHarmonicError(f"order {n} is not present in the source voltage")
    dun = u.component(n).differentiate()
    return n * u.omega * i.inner(dun) / dun.inner(dun)


def conductive_current(u: HarmonicSignal, i: HarmonicSignal) -> HarmonicSignal:
    """``i_g = i_a + i_s``: sum of projections on every voltage component."""
    return total((_project(i, u.component(n)) for n in support(u)), u.omega)


def scattered_current(u: HarmonicSignal, i: HarmonicSignal) -> HarmonicSignal:
    ge = equivalent_conductance(u, i)
    parts = (u.component(n) * (per_harmonic_conductance(u, i, n) - ge) for n in support(u))
    return total(parts, u.omega)


def reactive_current(u: HarmonicSignal, i: HarmonicSignal) -> HarmonicSignal:
    # DC-only source gives an empty sum, hence the zero signal.
    return total((_project(i, u.component(n).differentiate()) for n in u.orders), u.omega)


def iliovici_current(u: HarmonicSignal, i: HarmonicSignal) -> HarmonicSignal:
    du = u.differentiate()
    norm2 = du.inner(du)
    if norm2 == 0:
        raise ZeroSourceError("source voltage has no AC content")
    # sum over n of <i, du_n> is <i, du> because the du_n are disjoint
    return du * (i.inner(du) / norm2)


def scattered_reactive_current(u: HarmonicSignal, i: HarmonicSignal) -> HarmonicSignal:
    return reactive_current(u, i) - iliovici_current(u, i)


@dataclass(frozen=True)
class Decomposition:
    """Orthogonal current components; ``i_s`` is the scattered active current."""

    current: HarmonicSignal
    i_a: HarmonicSignal
    i_s: HarmonicSignal
    i_r: HarmonicSignal
    i_I: HarmonicSignal
    i_sr: HarmonicSignal
    residual: HarmonicSignal

    @property
    def i_sa(self) -> HarmonicSignal:
        return self.i_s

    @property
    def i_F(self) -> HarmonicSignal:
        return self.current - self.i_a

    @property
    def i_g(self) -> HarmonicSignal:
        return self.i_a + self.i_s

    def components(self) -> dict[str, HarmonicSignal]:
        return {
            "ia": self.i_a,
            "isa": self.i_s,
            "ir": self.i_r,
            "iI": self.i_I,
            "isr": self.i_sr,
            "ig": self.i_g,
            "total": self.current,
        }


def decompose(u: HarmonicSignal, i: HarmonicSignal) -> Decomposition:
    """Split ``i`` into active, scattered, reactive, Iliovici and scattered
    reactive currents with respect to ``u``.

    Current content at orders absent from ``u`` ends up in ``residual``; an
    LTI load never produces any, so a ``ResidualCurrentWarning`` is issued
    when it is noticeable.
    """
    _require_source(u)
    i_a = active_current(u, i)
    i_s = scattered_current(u, i)
    i_r = reactive_current(u, i)
    if u.orders:
        i_I = iliovici_current(u, i)
        i_sr = i_r - i_I
    else:
        i_I = i_sr = HarmonicSignal(u.omega)
    residual = i - i_a - i_s - i_r
    if residual.rms() > RESIDUAL_WARN_RATIO * i.rms():
        warnings.warn(
            f"current has rms {residual.rms():.3g} outside the voltage harmonics "
            f"{list(support(u))}; the load is not LTI",
            ResidualCurrentWarning,
            stacklevel=2,
        )
    return Decomposition(i, i_a, i_s, i_r, i_I, i_sr, residual)


def hybrid_decomposition(u: HarmonicSignal, net: Network) -> Decomposition:
    """Same components computed from the admittances of ``net``."""
    _require_source(u)
    w = u.omega
    ys = {n: admittance(net, n, w) for n in support(u)}
    U = {n: u.phasor(n) for n in u.orders}
    u2 = {n: abs(z) ** 2 for n, z in U.items()}

    p = sum(ys[n].real * u2[n] for n in u.orders) + (ys[0].real * u.dc**2 if u.dc else 0.0)
    ge = p / u.inner(u)
    weight = sum(n * n * u2[n] for n in u.orders)
    be = sum(n * ys[n].imag * u2[n] for n in u.orders) / weight if weight else 0.0

    def build(coef, dc_coef=0.0):
        return HarmonicSignal.from_phasors(
            w, {n: coef(n) * U[n] for n in u.orders}, dc_coef * u.dc
        )

    g0 = ys[0].real if u.dc else 0.0
    current = build(lambda n: ys[n], g0)
    i_a = build(lambda n: ge, ge)
    i_s = build(lambda n: ys[n].real - ge, g0 - ge)
    i_r = build(lambda n: 1j * ys[n].imag)
    i_I = build(lambda n: 1j * n * be)
    i_sr = build(lambda n: 1j * (ys[n].imag - n * be))
    return Decomposition(current, i_a, i_s, i_r, i_I, i_sr, HarmonicSignal(w))
