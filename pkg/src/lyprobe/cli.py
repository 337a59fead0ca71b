"""Command-line interface: simulate, zeros, verify, fit-cmax."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import verify as verify_module
from .channels import Channel, OatParameters
from .experiments import (
    Scenario,
    coherence_period,
    default_steps,
    emit_csv,
    fit_cmax_scaling,
    run_scenario,
)
from .ising_bath import IsingRing, lee_yang_zeros, partition_coefficients


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse failures through the validation exit code instead of
    # argparse's default SystemExit(2)
    def error(self, message: str):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="lyprobe",
        description=(
            "Unit-circle partition-function zeros of ferromagnetic Ising rings "
            "and the coherence, entanglement, and squeezing of twisted probe "
            "ensembles dephasing in them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and write the observable series as CSV")
    sim.add_argument("--nb", type=int, required=True, help="ring size (number of spins)")
    sim.add_argument("--beta", type=float, required=True, help="inverse temperature")
    sim.add_argument("--lambda", dest="coupling", type=float, default=1.0, help="ring coupling (default 1.0)")
    sim.add_argument("--probes", type=int, required=True, help="ensemble size N")
    sim.add_argument("--theta", type=float, required=True, help="twisting angle (radians)")
    sim.add_argument("--eta", type=float, default=0.01, help="probe-ring coupling (default 0.01)")
    sim.add_argument("--channel", choices=["I", "II"], required=True, help="bath geometry")
    sim.add_argument("--t-max", type=float, required=True, help="end of the time grid")
    sim.add_argument(
        "--steps",
        type=int,
        default=None,
        help="grid points (default: at least 40 samples between collapse times)",
    )
    sim.add_argument("--out", required=True, help="output CSV path")

    zer = sub.add_parser("zeros", help="write the zero phases and their residuals as CSV")
    zer.add_argument("--nb", type=int, required=True, help="ring size")
    zer.add_argument("--beta", type=float, required=True, help="inverse temperature")
    zer.add_argument("--lambda", dest="coupling", type=float, default=1.0, help="ring coupling (default 1.0)")
    zer.add_argument(
        "--out",
        required=True,
        help="output CSV path; modulus_residual is |P(e^{i phase})| of the normalized polynomial",
    )

    sub.add_parser("verify", help="run the full invariant suite")

    fit = sub.add_parser("fit-cmax", help="fit ln C_max against ensemble size")
    fit.add_argument("--theta", type=float, required=True, help="twisting angle (radians)")
    fit.add_argument("--beta", type=float, default=10.0, help="inverse temperature (default 10)")
    fit.add_argument("--n-min", type=int, default=3, help="smallest ensemble size (default 3)")
    fit.add_argument("--n-max", type=int, default=8, help="largest ensemble size (default 8)")
    fit.add_argument("--nb", type=int, default=100, help="ring size (default 100)")
    fit.add_argument("--lambda", dest="coupling", type=float, default=1.0, help="ring coupling (default 1.0)")
    fit.add_argument("--eta", type=float, default=0.01, help="probe-ring coupling (default 0.01)")

    return parser


def _cmd_simulate(args) -> int:
    ring = IsingRing(
        n_spins=args.nb,
        coupling=args.coupling,
        inverse_temperature=args.beta,
    )
    channel = Channel(args.channel)
    steps = args.steps
    if steps is None:
        zeros = lee_yang_zeros(partition_coefficients(ring))
        steps = default_steps(zeros, args.eta, args.t_max, channel)
    scenario = Scenario(
        ring=ring,
        oat=OatParameters(n_probes=args.probes, twist_angle=args.theta),
        channel=channel,
        t_max=args.t_max,
        steps=steps,
        eta=args.eta,
        outputs=args.out,
    )
    series = run_scenario(scenario)
    emit_csv(series, args.out)
    print(
        f"wrote {series.times.size} rows to {args.out} "
        f"(channel {channel.value}, period {coherence_period(args.eta, channel):.6g})"
    )
    return 0


def _cmd_zeros(args) -> int:
    ring = IsingRing(
        n_spins=args.nb,
        coupling=args.coupling,
        inverse_temperature=args.beta,
    )
    poly = partition_coefficients(ring)
    zeros = lee_yang_zeros(poly)
    roots = np.exp(1j * zeros.phases)
    residuals = np.abs(np.polyval(poly.coefficients[::-1], roots)) / poly.coefficients.sum()
    data = np.column_stack([zeros.phases, residuals])
    try:
        np.savetxt(
            args.out,
            data,
            fmt="%.12g",
            delimiter=",",
            header="phase,modulus_residual",
            comments="",
        )
    except OSError as exc:
        raise OSError(f"failed to write CSV to {args.out!r}: {exc}") from exc
    print(
        f"wrote {zeros.phases.size} zero phases to {args.out} "
        f"(residual bound {zeros.residual_bound:.3g})"
    )
    return 0


def _cmd_verify(_args) -> int:
    return 0 if verify_module.run_checks(verbose=True) else 2


def _cmd_fit_cmax(args) -> int:
    if args.n_min > args.n_max:
        raise ValueError(f"--n-min {args.n_min} exceeds --n-max {args.n_max}")
    ring = IsingRing(
        n_spins=args.nb,
        coupling=args.coupling,
        inverse_temperature=args.beta,
    )
    result = fit_cmax_scaling(
        list(range(args.n_min, args.n_max + 1)),
        theta=args.theta,
        ring=ring,
        eta=args.eta,
    )
    for n, log_c in zip(result.n_values, result.log_cmax):
        print(f"N={n}: C_max={np.exp(log_c):.9g}")
    print(f"alpha={result.alpha:.9g}")
    print(f"intercept={result.intercept:.9g}")
    print(f"residual={result.residual:.3g}")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "zeros": _cmd_zeros,
    "verify": _cmd_verify,
    "fit-cmax": _cmd_fit_cmax,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        # argparse exits directly for --help; keep its code
        return int(exc.code or 0)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"run '{parser.prog} --help' for usage", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
