"""Sampled waveforms, Lissajous loops and CSV export."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from cpcpower.spectrum import DEFAULT_SAMPLES, HarmonicSignal, check_samples

ORIENTATION_TOL = 1e-9


class Orientation(enum.Enum):
    ANTICLOCKWISE = "anticlockwise"
    CLOCKWISE = "clockwise"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Lissajous:
    """Closed current-versus-voltage contour sampled over one period.

    The last sample connects back to the first.
    """

    u: np.ndarray
    i: np.ndarray
    labels: tuple[str, str] = ("u", "i")

    @property
    def M(self) -> int:
        return len(self.u)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.u, self.i])


def lissajous(
    u_sig: HarmonicSignal,
    i_sig: HarmonicSignal,
    m: int = DEFAULT_SAMPLES,
    labels: tuple[str, str] = ("u", "i"),
) -> Lissajous:
    u_sig._check_omega(i_sig)
    check_samples(m, max(u_sig.max_order, i_sig.max_order))
    _, u = u_sig.sample(m)
    _, i = i_sig.sample(m)
    return Lissajous(u, i, labels)


def polygon_area(fig: Lissajous) -> float:
    """Signed shoelace area of the polygon through the samples."""
    u, i = fig.u, fig.i
    return 0.5 * float(np.sum(u * np.roll(i, -1) - np.roll(u, -1) * i))


def loop_area(fig: Lissajous) -> float:
    """Signed area of the closed contour; positive when anticlockwise (u on x, i on y).

    The samples are taken as one period of a band-limited pair. In the
    frequency domain the shoelace sum weights harmonic k by
    ``(M/2pi) sin(2pi k/M)`` instead of ``k``; using ``k`` gives the area of
    the continuous curve, which the polygon only approaches as O((k/M)^2).
    The Nyquist bin is dropped.
    """
    m = fig.M
    uk = np.fft.rfft(fig.u) / m
    ik = np.fft.rfft(fig.i) / m
    k = np.arange(len(uk))
    if m % 2 == 0:
        k[-1] = 0
    return -4 * math.pi * float(np.sum(k * np.imag(np.conj(uk) * ik)))


def orientation(fig: Lissajous) -> Orientation:
    area = loop_area(fig)
    scale = math.sqrt(np.mean(fig.u**2) * np.mean(fig.i**2))
    if abs(area) <= ORIENTATION_TOL * scale:
        return Orientation.DEGENERATE
    return Orientation.ANTICLOCKWISE if area > 0 else Orientation.CLOCKWISE


class SampledPowers(NamedTuple):
    P: float
    Q_I: float
    rms_u: float
    rms_i: float


def sampled_power_oracles(u: HarmonicSignal, i: HarmonicSignal, m: int = DEFAULT_SAMPLES) -> SampledPowers:
    """Trapezoid-rule estimates of P, Q_I and the rms values.

    The current derivative is taken spectrally before sampling.
    """
    u._check_omega(i)
    check_samples(m, max(u.max_order, i.max_order))
    _, us = u.sample(m)
    _, is_ = i.sample(m)
    _, dis = i.differentiate().sample(m)
    return SampledPowers(
        P=float(np.mean(us * is_)),
        Q_I=float(np.mean(us * dis)) / u.omega,
        rms_u=math.sqrt(np.mean(us**2)),
        rms_i=math.sqrt(np.mean(is_**2)),
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write(path, header, columns) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([_fmt(x) for x in row])


def write_waveform_csv(path, u: HarmonicSignal, i: HarmonicSignal, m: int = DEFAULT_SAMPLES) -> None:
    """Write ``t,u,i`` rows for one period."""
    u._check_omega(i)
    check_samples(m, max(u.max_order, i.max_order))
    t, us = u.sample(m)
    _, is_ = i.sample(m)
    _write(path, ["t", "u", "i"], [t, us, is_])


def write_lissajous_csv(path, fig: Lissajous) -> None:
    _write(path, ["u", "i"], [fig.u, fig.i])


def read_csv(path) -> tuple[list[str], np.ndarray]:
    with Path(path).open(newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(x) for x in r] for r in rows[1:]])
