"""Time-domain Currents' Physical Components power analysis for single-phase loads."""

from cpcpower.spectrum import HarmonicSignal
from cpcpower.netlist import (
    AdmittanceTable,
    Capacitor,
    Inductor,
    Parallel,
    Resistor,
    Series,
    admittance,
    parallel_with,
    steady_state_current,
)
from cpcpower.cpc import Decomposition, decompose, hybrid_decomposition
from cpcpower.metrics import PowerReport, power_report
from cpcpower.compensate import (
    SeriesLC,
    ShuntCapacitor,
    ShuntInductor,
    evaluate_with,
    full_compensation,
    series_lc_for_scattered_reactive,
    shunt_for_budeanu_null,
    shunt_from_equivalent_susceptance,
)

__version__ = "0.1.0"
