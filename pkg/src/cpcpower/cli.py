"""Command-line front end: ``cpc report|decompose|compensate|lissajous``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence

from cpcpower import compensate, cpc, metrics
from cpcpower.circuit import STRATEGIES, Circuit, CircuitFileError, load_circuit
from cpcpower.errors import (
    CPCError,
    NonphysicalCompensatorError,
    SamplingError,
    UnsupportedCompensatorOrderError,
)
from cpcpower.metrics import SCALAR_FIELDS, PowerReport
from cpcpower.netlist import steady_state_current
from cpcpower.spectrum import DEFAULT_SAMPLES
from cpcpower import waveform

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_IO = 4
EXIT_UNSUPPORTED = 5

UNITS = {
    "C": "F", "L": "H", "L_x": "H", "C_x": "F",
    "P": "W", "S": "VA", "PF": "-", "Q_B": "var", "D_B": "VA", "Q_F": "VA",
    "D_s": "VA", "Q_r": "var", "Q_i": "var", "Q_s": "var", "Q_I": "var",
    "G_e": "S", "B_e": "S", "character": "",
}

PAIRS = {
    "source": lambda d: d.current,
    "active": lambda d: d.i_a,
    "scattered": lambda d: d.i_s,
    "reactive": lambda d: d.i_r,
    "iliovici": lambda d: d.i_I,
    "scattered_reactive": lambda d: d.i_sr,
    "g": lambda d: d.i_g,
}


class UsageError(Exception):
    pass


def round3(x: float) -> str:
    """Half-away-from-zero rounding to three decimals, without a negative zero."""
    q = Decimal(repr(float(x))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP)
    if q == 0:
        q = abs(q)
    return f"{q:.3f}"


def _cell(value) -> str:
    if value is None:
        return "---"
    if isinstance(value, float):
        return round3(value)
    return str(value)


def render_table(headers: Sequence[str], rows: Sequence[tuple]) -> str:
    cells = [list(headers)] + [[r[0]] + [_cell(v) for v in r[1:]] for r in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(headers))]
    lines = []
    for j, row in enumerate(cells):
        parts = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:-1], widths[1:-1])]
        parts.append(row[-1])
        lines.append("  ".join(parts).rstrip())
        if j == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines)


def _report_rows(reports: Sequence[PowerReport]):
    for name in SCALAR_FIELDS:
        yield (name, *(getattr(r, name) for r in reports), UNITS[name])
    yield ("character", *(str(r.load_character) for r in reports), "")


def _element_rows(stages):
    for key, attr, kinds in (
        ("C", "C", compensate.ShuntCapacitor),
        ("L", "L", compensate.ShuntInductor),
        ("L_x", "L_x", compensate.SeriesLC),
        ("C_x", "C_x", compensate.SeriesLC),
    ):
        values = []
        for comps in stages:
            found = [getattr(c, attr) for c in comps if isinstance(c, kinds)]
            values.append(found[0] if found else None)
        if any(v is not None for v in values):
            yield (key, *values, UNITS[key])


def _report_csv(report: PowerReport) -> str:
    lines = ["quantity,value"]
    lines += [f"{k},{format(getattr(report, k), '.17g')}" for k in SCALAR_FIELDS]
    lines.append(f"load_character,{report.load_character}")
    for n, h in report.per_harmonic.items():
        for k, v in h._asdict().items():
            lines.append(f"{k}_{n},{format(v, '.17g')}")
    return "\n".join(lines)


def _per_harmonic_table(report: PowerReport) -> str:
    rows = [(str(n), h.P, h.Q, h.Q_I, h.G, h.B, "") for n, h in report.per_harmonic.items()]
    return render_table(("n", "P_n", "Q_n", "Q_In", "G_n", "B_n", ""), rows)


def _samples(args) -> int:
    if args.samples is not None:
        return args.samples
    env = os.environ.get("CPC_SAMPLES")
    if env is None:
        return DEFAULT_SAMPLES
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CPC_SAMPLES must be an integer, got {env!r}") from None


def plan_stages(circuit: Circuit, strategy: Optional[str]):
    """Compensator sets per stage: ``[(label, [compensators]), ...]``."""
    u, load = circuit.source, circuit.load
    stages = [("Uncompensated", [])]
    if strategy == "budeanu":
        stages.append(("Compensated", [compensate.shunt_for_budeanu_null(u, load)]))
    elif strategy == "iliovici":
        stages.append(("Compensated", [compensate.shunt_from_equivalent_susceptance(u, load)]))
    elif strategy == "full":
        shunt, lc = compensate.full_compensation(u, load)
        stages.append(("Iliovici comp.", [shunt]))
        stages.append(("Full comp.", [shunt, lc]))
    return [(label, [c for c in comps if c is not None]) for label, comps in stages]


def _compensator_dict(c) -> dict:
    return {"kind": type(c).__name__, **vars(c)}


def _print_stages(circuit, stages, fmt, out):
    u = circuit.source
    reports = [compensate.evaluate_with(u, circuit.load, comps) for _, comps in stages]
    if fmt == "json":
        payload = [
            {"stage": label, "compensators": [_compensator_dict(c) for c in comps], "report": r.as_dict()}
            for (label, comps), r in zip(stages, reports)
        ]
        print(json.dumps(payload if len(payload) > 1 else payload[0]["report"], indent=2), file=out)
    elif fmt == "csv":
        for (label, _), r in zip(stages, reports):
            if len(stages) > 1:
                print(f"# {label}", file=out)
            print(_report_csv(r), file=out)
    else:
        headers = ("Quantity", *(label if len(stages) > 1 else "Value" for label, _ in stages), "Unit")
        rows = list(_element_rows([comps for _, comps in stages])) + list(_report_rows(reports))
        print(render_table(headers, rows), file=out)
        if len(stages) == 1:
            print("", file=out)
            print(_per_harmonic_table(reports[0]), file=out)
    return reports


def cmd_report(args, out=None) -> int:
    out = out or sys.stdout
    circuit = load_circuit(args.circuit)
    _print_stages(circuit, plan_stages(circuit, circuit.compensation), args.format, out)
    return EXIT_OK


def cmd_compensate(args, out=None) -> int:
    out = out or sys.stdout
    circuit = load_circuit(args.circuit)
    stages = plan_stages(circuit, args.strategy)
    final = stages[-1][1]
    summary = "Compensator: " + (", ".join(
        f"{type(c).__name__}(" + ", ".join(f"{k}={v:.6g}" for k, v in vars(c).items()) + ")"
        for c in final) or "none")
    # json output carries the compensators itself and must stay parseable
    if args.format == "table":
        print(summary, file=out)
    elif args.format == "csv":
        print("# " + summary, file=out)
    reports = _print_stages(circuit, stages, args.format, out)
    if reports[-1].PF < reports[0].PF - 1e-12:
        print(
            f"warning: power factor degraded ({reports[0].PF:.3f} -> {reports[-1].PF:.3f})",
            file=sys.stderr,
        )
    return EXIT_OK


def _source_current(circuit: Circuit, strategy: Optional[str]):
    comps = plan_stages(circuit, strategy)[-1][1]
    net = compensate.compensated_network(circuit.load, comps)
    return steady_state_current(net, circuit.source)


def cmd_decompose(args, out=None) -> int:
    out = out or sys.stdout
    circuit = load_circuit(args.circuit)
    u = circuit.source
    m = _samples(args)
    d = cpc.decompose(u, _source_current(circuit, args.strategy or circuit.compensation))
    comps = d.components()
    orders = sorted(set(cpc.support(u)).union(*(cpc.support(s) for s in comps.values())))
    rows = []
    for name, sig in comps.items():
        for n in orders:
            a, b = (sig.dc, 0.0) if n == 0 else sig.terms.get(n, (0.0, 0.0))
            rows.append((name, str(n), a, b, ""))
    print(render_table(("current", "n", "a_n", "b_n", ""), rows), file=out)
    if args.out:
        for name, sig in comps.items():
            path = f"{args.out}_{name}.csv"
            waveform.write_waveform_csv(path, u, sig, m)
            print(f"wrote {path}", file=out)
    return EXIT_OK


def cmd_lissajous(args, out=None) -> int:
    out = out or sys.stdout
    circuit = load_circuit(args.circuit)
    pairs = [p.strip() for p in args.pairs.split(",") if p.strip()]
    unknown = [p for p in pairs if p not in PAIRS]
    if unknown or not pairs:
        raise UsageError(f"unknown pair name(s): {', '.join(unknown) or '<empty>'}; "
                         f"choose from {', '.join(PAIRS)}")
    u = circuit.source
    m = _samples(args)
    d = cpc.decompose(u, _source_current(circuit, args.strategy or circuit.compensation))
    rows = []
    for name in pairs:
        sig = PAIRS[name](d)
        fig = waveform.lissajous(u, sig, m, labels=("source", name))
        area = waveform.loop_area(fig)
        qi = metrics.iliovici_total(u, sig)
        rows.append((name, area, area / (2 * math.pi), qi, waveform.orientation(fig).value))
        if args.out:
            path = f"{args.out}_{name}.csv"
            waveform.write_lissajous_csv(path, fig)
    print(render_table(("pair", "area", "area/2pi", "Q_I", "orientation"), rows), file=out)
    if args.out:
        for name in pairs:
            print(f"wrote {args.out}_{name}.csv", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpc", description="Currents' Physical Components power analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="print every power quantity")
    p.add_argument("circuit")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("decompose", help="current components and waveform CSVs")
    p.add_argument("circuit")
    p.add_argument("--out", help="CSV file prefix")
    p.add_argument("--samples", type=int)
    p.add_argument("--strategy", choices=STRATEGIES)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compensate", help="size a compensator and compare reports")
    p.add_argument("circuit")
    p.add_argument("--strategy", choices=STRATEGIES, required=True)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=cmd_compensate)

    p = sub.add_parser("lissajous", help="Lissajous loop CSVs and signed areas")
    p.add_argument("circuit")
    p.add_argument("--pairs", default="source", help=f"comma-separated, from: {', '.join(PAIRS)}")
    p.add_argument("--samples", type=int)
    p.add_argument("--out", help="CSV file prefix")
    p.add_argument("--strategy", choices=STRATEGIES)
    p.set_defaults(func=cmd_lissajous)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CircuitFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UnsupportedCompensatorOrderError, NonphysicalCompensatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CPCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
