"""Command-line interface: ``polphase {dist,figure,verify,uncertainty,matrix}``.

Exit status: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import output
from .constants import DEFAULT_CUTOFF, DEFAULT_GRID_POINTS
from .errors import PolphaseError, SpecParseError
from .hilbert import EnergyBasis, tensor_embed
from .operators import OPERATOR_NAMES, OperatorSet
from .phase import (PhaseGrid, distribution_decomposed, distribution_direct, interference_term,
                    uncertainty_report)
from .states import coherent_state, fock_state, parse_state_spec, polarization_state
from .verify import run_verification

log = logging.getLogger("polphase")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
FIGURES = ("fig2", "fig3")


class UsageError(PolphaseError):
    pass


@dataclass(frozen=True)
class RunConfig:
    cutoff: int = DEFAULT_CUTOFF
    grid_points: int = DEFAULT_GRID_POINTS
    omega: float = 1.0
    hbar: float = 1.0
    format: str = "csv"
    output: str | None = None
    verbosity: int = 0

    def __post_init__(self):
        if self.cutoff < 0:
            raise UsageError(f"--cutoff must be >= 0, got {self.cutoff}")
        if self.grid_points < 2 * (self.cutoff + 1):
            raise UsageError(f"--grid-points must be >= 2*(cutoff+1) = {2 * (self.cutoff + 1)}")
        if not self.omega > 0:
            raise UsageError(f"--omega must be > 0, got {self.omega}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"--format must be csv or json, got {self.format!r}")

    def echo(self) -> dict:
        d = asdict(self)
        for key in ("output", "verbosity", "format"):
            d.pop(key)
        return d


def _render_series(config: RunConfig, nodes, series: dict, extra: dict | None = None) -> str:
    if config.format == "json":
        return output.series_json(config.echo(), nodes, series, extra)
    return output.series_csv(nodes, series)


# -- commands (return the text to write) --------------------------------------

def cmd_dist(config: RunConfig, document: dict) -> str:
    field, pol, settings = parse_state_spec(document, cutoff=config.cutoff,
                                            grid_points=config.grid_points, omega=config.omega)
    grid = PhaseGrid(settings.grid_points)
    dist = distribution_decomposed(field, pol, grid)
    direct = distribution_direct(tensor_embed(field, pol), grid)
    log.info("normalisation %.17g; route gap %.3g", dist.normalization,
             float(abs(dist.density - direct.density).max()))
    series = {"density": direct.density, **dist.terms}
    return _render_series(config, grid.nodes, series, {"state": document})


def _figure_series(config: RunConfig, figure: str) -> dict:
    N = config.cutoff
    grid = PhaseGrid(config.grid_points)
    if figure == "fig2":
        f = coherent_state(1.0, N)
        series = {}
        for name in ("circular", "anticircular"):
            series[name] = distribution_direct(tensor_embed(f, polarization_state(name)), grid).density
        series["interference"] = interference_term(f, polarization_state("horizontal"), grid)
        for name in ("horizontal", "vertical"):
            series[name] = distribution_direct(tensor_embed(f, polarization_state(name)), grid).density
        return series
    if figure == "fig3":
        return {
            "circular_fock": distribution_direct(
                tensor_embed(fock_state(1, N), polarization_state("circular")), grid).density,
            "horizontal_vacuum": distribution_direct(
                tensor_embed(fock_state(0, N), polarization_state("horizontal")), grid).density,
            "horizontal_single_photon": distribution_direct(
                tensor_embed(fock_state(1, N), polarization_state("horizontal")), grid).density,
        }
    raise UsageError(f"unknown figure {figure!r}; expected one of {list(FIGURES)}")


def cmd_figure(config: RunConfig, figure: str) -> str:
    series = _figure_series(config, figure)
    extra = {"figure": figure}
    if figure == "fig2":
        extra["signed_series"] = ["interference"]
    return _render_series(config, PhaseGrid(config.grid_points).nodes, series, extra)


def cmd_verify(config: RunConfig, *, corrupt_phase_sign: bool = False) -> tuple[str, bool]:
    report = run_verification(config.cutoff, config.grid_points, config.omega, config.hbar,
                              corrupt_phase_sign=corrupt_phase_sign)
    for c in report.checks:
        log.info("%-36s %s  defect=%.3g  threshold=%.3g", c.name,
                 "PASS" if c.passed else "FAIL", c.max_defect, c.threshold)
    return output.dumps(report.as_dict()) + "\n", report.passed


def cmd_uncertainty(config: RunConfig, document: dict) -> str:
    field, pol, settings = parse_state_spec(document, cutoff=config.cutoff,
                                            grid_points=config.grid_points, omega=config.omega)
    report = uncertainty_report(tensor_embed(field, pol), settings.omega, config.hbar,
                                PhaseGrid(settings.grid_points))
    record = report.as_dict()
    if config.format == "json":
        return output.dumps({"config": config.echo(), "state": document, "report": record}) + "\n"
    return output.record_csv(record)


def cmd_matrix(config: RunConfig, name: str) -> str:
    if name not in OPERATOR_NAMES:
        raise UsageError(f"unknown operator {name!r}; expected one of {list(OPERATOR_NAMES)}")
    basis = EnergyBasis(config.cutoff)
    op = OperatorSet.build(basis, config.omega, config.hbar).by_name(name)
    header = {
        "operator": name,
        "cutoff": basis.cutoff,
        "dimension": basis.dimension,
        "labels": f"{basis.kmin}..{basis.kmax}",
        "layout": "row-major; offset = k + cutoff + 1; entries re,im",
        "omega": output.fmt(config.omega),
        "hbar": output.fmt(config.hbar),
    }
    if config.format == "json":
        return output.matrix_json(op.entries, header)
    return output.matrix_csv(op.entries, header)


# -- argument handling ----------------------------------------------------------

def _add_global(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--cutoff", type=int, default=d(None), help="Fock cutoff per polarization")
    p.add_argument("--grid-points", type=int, default=d(None), help="phase grid nodes")
    p.add_argument("--omega", type=float, default=d(None), help="angular frequency")
    p.add_argument("--hbar", type=float, default=d(None), help="reduced Planck constant")
    p.add_argument("--format", choices=("csv", "json"), default=d(None))
    p.add_argument("--output", "-o", default=d(None), help="output path (default: stdout)")
    p.add_argument("--spec", default=d(None), help="state-spec JSON document ('-' for stdin)")
    p.add_argument("-v", "--verbose", action="count", default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polphase", description=__doc__.splitlines()[0])
    _add_global(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("dist", "phase distribution of a state spec"),
                        ("figure", "data series behind a reproduction figure"),
                        ("verify", "run the operator-identity check registry"),
                        ("uncertainty", "energy/time spreads of a state spec"),
                        ("matrix", "dump an operator matrix")):
        p = sub.add_parser(name, help=help_)
        _add_global(p, suppress=True)
        if name == "figure":
            p.add_argument("figure_id", help="fig2 or fig3")
        elif name == "matrix":
            p.add_argument("operator", help="one of " + ", ".join(OPERATOR_NAMES))
        elif name == "verify":
            p.add_argument("--corrupt-phase-sign", action="store_true", help=argparse.SUPPRESS)
    return parser


def _load_spec(path: str | None) -> dict:
    if path is None:
        raise SpecParseError("<spec>", "this command requires --spec")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SpecParseError("<spec>", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError("<root>", f"invalid JSON: {exc}") from None


def _config(args, document: dict | None) -> RunConfig:
    doc = document if isinstance(document, dict) else {}

    def pick(flag, key, default):
        value = getattr(args, flag)
        if value is not None:
            return value
        return doc.get(key, default) if key else default

    return RunConfig(
        cutoff=pick("cutoff", "cutoff", DEFAULT_CUTOFF),
        grid_points=pick("grid_points", "grid_points", DEFAULT_GRID_POINTS),
        omega=pick("omega", "omega", 1.0),
        hbar=pick("hbar", None, 1.0),
        format=pick("format", None, "csv"),
        output=args.output,
        verbosity=args.verbose,
    )


def _error(exc: Exception) -> int:
    payload = {"error": type(exc).__name__, "message": getattr(exc, "message", str(exc))}
    if isinstance(exc, SpecParseError):
        payload["path"] = exc.path
    print(json.dumps(payload), file=sys.stderr)
    return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    status = EXIT_OK
    try:
        document = _load_spec(args.spec) if args.command in ("dist", "uncertainty") else None
        if document is not None and not isinstance(document, dict):
            raise SpecParseError("<root>", "expected a mapping")
        # flags override the document; parse_state_spec sees the merged values
        for key, typ in (("cutoff", int), ("grid_points", int), ("omega", float)):
            if document is not None and key in document and getattr(args, key) is None:
                value = document[key]
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise SpecParseError(key, f"expected a number, got {value!r}")
                if typ is int and int(value) != value:
                    raise SpecParseError(key, f"expected an integer, got {value!r}")
        config = _config(args, document)
        if args.command == "dist":
            text = cmd_dist(config, document)
        elif args.command == "figure":
            text = cmd_figure(config, args.figure_id)
        elif args.command == "verify":
            text, ok = cmd_verify(config, corrupt_phase_sign=args.corrupt_phase_sign)
            status = EXIT_OK if ok else EXIT_FAILED
        elif args.command == "uncertainty":
            text = cmd_uncertainty(config, document)
        else:
            text = cmd_matrix(config, args.operator)
    except (PolphaseError, ValueError) as exc:
        return _error(exc)

    if config.output:
        Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
