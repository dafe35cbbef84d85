"""Command-line front end; every subcommand writes CSV.

Exit codes: 0 success, 1 usage error, 2 numerical non-convergence,
3 physics-invariant violation (BBM bound, Parseval).
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys

import numpy as np

from . import information, momentum, thermo
from .exceptions import NonConvergence, ParsevalViolation, TruncationBias
from .model import ModelParams
from .position import auto_grid, entropic_density, normalize
from .quadrature import GridSpec

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGENCE, EXIT_VIOLATION = 0, 1, 2, 3
FLOAT_FMT = "%.12g"
BBM_SLACK = 1e-6
EULER_GAMMA = 0.5772156649015329


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _tau_range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, count = text.split(":")
        return float(lo), float(hi), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:POINTS, got {text!r}")


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model parameters")
    g.add_argument("--m", type=float, default=1.0, help="mass")
    g.add_argument("--hbar", type=float, default=1.0)
    g.add_argument("--kB", type=float, default=1.0, dest="k_B")
    g.add_argument("--theta", type=float, default=1.0, help="non-Hermitian coupling 2 m alpha / hbar")
    g.add_argument("--py", type=float, default=1.0, dest="p_y", help="conserved y momentum")
    g.add_argument("--N", type=int, default=1, help="particle count")


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="-", help="output path, '-' for stdout (default)")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--points", type=int, default=2049, help="initial grid points (odd)")
    p.add_argument("--half-width", type=float, default=None, help="override grid half width")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="landau-entropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (
        ("density", "position-space probability and entropic densities"),
        ("momentum", "momentum-space probability and entropic densities"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--omega", type=float, required=True)
        _add_grid(p)
        _add_params(p)
        _add_out(p)

    p = sub.add_parser("table1", help="entropy table over (n, omega) with the BBM check")
    p.add_argument("--n-list", type=_int_list, default=list(information.TABLE1_N))
    p.add_argument("--omega", type=_float_list, default=list(information.TABLE1_OMEGA))
    p.add_argument("--compare", action="store_true", help="report deviations from the reference table")
    p.add_argument("--points", type=int, default=2049)
    p.add_argument("--tol", type=float, default=information.ENTROPY_TOL)
    _add_params(p)
    _add_out(p)

    p = sub.add_parser("sweep", help="entropies on a log-spaced omega grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--per-decade", type=int, default=25)
    p.add_argument("--points", type=int, default=2049)
    p.add_argument("--tol", type=float, default=information.ENTROPY_TOL)
    _add_params(p)
    _add_out(p)

    p = sub.add_parser("thermo", help="F, U, S, C_v per particle over a tau sweep")
    p.add_argument("--omega", type=_float_list, required=True)
    p.add_argument("--tau", type=_tau_range, default=(0.1, 100.0, 64), help="MIN:MAX:POINTS")
    _add_params(p)
    _add_out(p)

    p = sub.add_parser("verify", help="run every invariant suite")
    p.add_argument("--points", type=int, default=2049)
    p.add_argument("--tol", type=float, default=information.ENTROPY_TOL)
    _add_params(p)
    return parser


def _params(args, omega: float) -> ModelParams:
    return ModelParams(
        omega=omega, m=args.m, hbar=args.hbar, k_B=args.k_B,
        theta=args.theta, p_y=args.p_y, N=args.N,
    )


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(value)
    return FLOAT_FMT % value


def _write_csv(path: str, header, rows) -> None:
    with _open_out(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _position_state(args, params):
    grid = auto_grid(params, args.n, args.points)
    if args.half_width is not None:
        grid = GridSpec(grid.center, args.half_width, args.points)
    return normalize(params, args.n, grid)


def cmd_density(args) -> int:
    wf = _position_state(args, _params(args, args.omega))
    rho = wf.density
    rows = zip(wf.coordinates, wf.samples.real, wf.samples.imag, rho, entropic_density(rho))
    _write_csv(args.out, ("x", "re_psi", "im_psi", "prob_density", "entropic_density"), rows)
    return EXIT_OK


def cmd_momentum(args) -> int:
    params = _params(args, args.omega)
    wf = _position_state(args, params)
    kgrid = momentum.auto_kgrid(params, args.n, args.points)
    if args.half_width is not None:
        kgrid = GridSpec(kgrid.center, args.half_width, args.points)
    phi = momentum.fourier_transform(wf, kgrid)
    rho = phi.density
    rows = zip(phi.coordinates, phi.samples.real, phi.samples.imag, rho, entropic_density(rho))
    _write_csv(args.out, ("k", "re_phi", "im_phi", "prob_density", "entropic_density"), rows)
    return EXIT_OK


def _report_rows(reports):
    for r in reports:
        yield (r.n, r.omega, r.S_x, r.S_k, r.entropy_sum, r.bbm_bound, r.margin)


REPORT_HEADER = ("n", "omega", "S_x", "S_k", "sum", "bbm_bound", "margin")


def cmd_table1(args) -> int:
    base = _params(args, 1.0)
    reports = information.table1(
        base, args.n_list, args.omega, points=args.points, tol=args.tol
    )
    _write_csv(args.out, REPORT_HEADER, _report_rows(reports))
    if args.compare:
        dev_x = dev_k = 0.0
        for r in reports:
            ref = information.REFERENCE_TABLE1.get((r.n, r.omega))
            if ref is None:
                continue
            dx, dk = abs(r.S_x - ref[0]), abs(r.S_k - ref[1])
            dev_x, dev_k = max(dev_x, dx), max(dev_k, dk)
            print(f"n={r.n} omega={r.omega:g}: dS_x={r.S_x - ref[0]:+.5f} dS_k={r.S_k - ref[1]:+.5f}",
                  file=sys.stderr)
        print(f"max |dS_x| = {dev_x:.5f}, max |dS_k| = {dev_k:.5f}", file=sys.stderr)
    if any(r.margin < -BBM_SLACK for r in reports):
        print("BBM bound violated", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_sweep(args) -> int:
    reports = information.omega_sweep(
        _params(args, 1.0), args.n, args.omega_min, args.omega_max,
        per_decade=args.per_decade, points=args.points, tol=args.tol,
    )
    _write_csv(args.out, REPORT_HEADER, _report_rows(reports))
    if any(r.margin < -BBM_SLACK for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_thermo(args) -> int:
    lo, hi, count = args.tau
    rows = []
    for omega in args.omega:
        curve = thermo.thermo_curve(_params(args, omega), lo, hi, count)
        rows.extend(
            (p.tau, omega, p.F_per_N, p.U_per_N, p.S_per_NkB, p.Cv_per_NkB) for p in curve.points
        )
    _write_csv(args.out, ("tau", "omega", "F_per_N", "U_per_N", "S_per_NkB", "Cv_per_NkB"), rows)
    return EXIT_OK


def hermitian_entropy() -> float:
    """Entropy of the density (2/sqrt(pi)) x^2 exp(-x^2), from Gaussian moments."""
    return 0.5 * math.log(math.pi) + math.log(2.0) + EULER_GAMMA - 0.5


def _suite_entropy(args):
    base = _params(args, 1.0)
    lattice = information.table1(base, points=args.points, tol=args.tol)
    lattice += information.table1(base, omega_list=(1.0, 5.0), points=args.points, tol=args.tol)
    worst_parseval = max(r.parseval_defect for r in lattice)
    worst_margin = min(r.margin for r in lattice)
    yield "parseval", worst_parseval <= 1e-6, f"max defect {worst_parseval:.2e}"
    yield "bbm", worst_margin >= -BBM_SLACK, f"min margin {worst_margin:.5f}"


def _suite_hermitian(args):
    params = ModelParams(omega=1.0, theta=0.0, p_y=0.0)
    r = information.entropy_report(params, 0, points=args.points, tol=args.tol)
    expected = hermitian_entropy()
    err = max(abs(r.S_x - expected), abs(r.S_k - expected))
    yield "hermitian-limit", err <= 1e-4, f"S_x={r.S_x:.6f} S_k={r.S_k:.6f} oracle={expected:.6f}"


def _suite_momentum(args):
    params = ModelParams(omega=10.0, theta=args.theta if args.theta > 0 else 1.0)
    worst = 0.0
    drift = None
    for n in (0, 1):
        phi = momentum.fourier_transform(normalize(params, n, auto_grid(params, n, args.points)))
        k = phi.coordinates
        if n == 0:
            drift = float(np.dot(k, phi.density) * phi.grid.spacing)
        oracle = np.abs(momentum.closed_form_momentum(params, n, k)) ** 2
        worst = max(worst, np.max(np.abs(phi.density / phi.density.max() - oracle / oracle.max())))
    yield "momentum-drift", drift < 0, f"<k> = {drift:.5f}"
    yield "momentum-shape", worst <= 1e-4, f"max shape deviation {worst:.2e}"


def _suite_thermo(args):
    worst = 0.0
    for bx in np.geomspace(0.05, 5.0, 50):
        params = ModelParams(omega=1.0)
        beta = bx / (params.hbar * params.omega)
        closed = thermo.partition_closed(params, beta)
        worst = max(worst, abs(thermo.partition_series(params, beta) - closed) / closed)
    yield "partition", worst <= 1e-10, f"max relative gap {worst:.2e}"

    worst_d = worst_l = 0.0
    for omega in (10.0, 100.0):
        for tau in (0.2, 1.0, 5.0, 25.0):
            chk = thermo.crosscheck_derivatives(_params(args, omega), tau)
            worst_d, worst_l = max(worst_d, chk.worst), max(worst_l, chk.legendre)
    yield "derivatives", worst_d <= 1e-6, f"max defect {worst_d:.2e}"
    yield "legendre", worst_l <= 1e-9, f"max defect {worst_l:.2e}"


def cmd_verify(args) -> int:
    failed = False
    for suite in (_suite_hermitian, _suite_entropy, _suite_momentum, _suite_thermo):
        for name, ok, detail in suite(args):
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
            failed |= not ok
    return EXIT_VIOLATION if failed else EXIT_OK


COMMANDS = {
    "density": cmd_density,
    "momentum": cmd_momentum,
    "table1": cmd_table1,
    "sweep": cmd_sweep,
    "thermo": cmd_thermo,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (NonConvergence, TruncationBias) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ParsevalViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
