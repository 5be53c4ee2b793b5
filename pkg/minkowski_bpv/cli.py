"""Command-line interface for Minkowski BPV."""

import argparse
import csv
import io
import json
import logging
import math
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ValidationError
from sqlalchemy.exc import SQLAlchemyError

from minkowski_bpv.config.config_loader import ConfigLoader
from minkowski_bpv.exceptions import ConvergenceError, PreconditionError, RigidityError
from minkowski_bpv.norm import NormSpec, normalize, uniformity_constant
from minkowski_bpv.pde import (
    PdeProblem,
    solution_report,
    solve,
    threshold_sweep,
)
from minkowski_bpv.rearrange import GridFunction, random_bump_function, rearrangement_report
from minkowski_bpv.rigidity import (
    VolumeProfile,
    power_deficiency,
    rigidity_report,
)
from minkowski_bpv.selftest import run_selftest
from minkowski_bpv.specfun import bessel_j, bessel_j_prime, bessel_zeros, first_zero
from minkowski_bpv.spectrum import (
    RadialProfile,
    euler_lagrange_residual,
    extremal_profile,
    radial_eigen_min,
    sharp_constant,
    verify_bpv_grid,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

VOLUME_TABLE_POINTS = 100


class RunConfig(BaseModel):
    """Resolved configuration of one command-line run."""

    command: str
    seed: int = 0
    norm: Optional[str] = None
    output: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    log_run: bool = True
    parameters: Dict[str, Any] = {}


Handler = Callable[[RunConfig], Tuple[Any, Optional[str]]]


def setup_logging(verbose: bool = False) -> None:
    """Set up logging.

    Args:
        verbose (bool, optional): Whether to enable verbose logging. Defaults to False.
    """
    log_level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler()],
    )


def _csv(header: List[str], rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def _load_norm(config: RunConfig, n: int) -> NormSpec:
    if config.norm is None:
        return NormSpec.euclidean(n)
    spec = NormSpec.from_file(config.norm)
    if spec.n != n:
        raise PreconditionError(f"norm file is {spec.n}-dimensional, expected n = {n}")
    return normalize(spec)


def _profile_summary(profile: RadialProfile) -> Dict[str, Any]:
    return {
        "R": profile.R,
        "mesh_size": len(profile),
        "grading": profile.grading,
        "sup_norm": profile.sup_norm(),
    }


def bessel_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Evaluate J_alpha and J'_alpha at the requested points."""
    alpha = config.parameters["alpha"]
    t = np.asarray(config.parameters["t"], dtype=float)
    values = np.atleast_1d(bessel_j(alpha, t))
    derivatives = np.atleast_1d(bessel_j_prime(alpha, t))
    result = {
        "alpha": alpha,
        "t": t.tolist(),
        "j": values.tolist(),
        "j_prime": derivatives.tolist(),
    }
    rows = zip(t.tolist(), values.tolist(), derivatives.tolist())
    return result, _csv(["t", "j", "j_prime"], rows)


def zeros_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Tabulate the first zeros of J_alpha."""
    alpha = config.parameters["alpha"]
    table = bessel_zeros(alpha, config.parameters["count"])
    residual = float(np.max(np.abs(bessel_j(alpha, table.zeros))))
    result = table.to_dict()
    result["max_residual"] = residual
    result["passed"] = residual <= ConfigLoader().get_zero_residual()
    rows = [(k, float(z)) for k, z in enumerate(table.zeros, start=1)]
    return result, _csv(["k", "zero"], rows)


def sharp_constant_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Compute S_alpha for a domain volume."""
    alpha, n, volume = (config.parameters[k] for k in ("alpha", "n", "volume"))
    result = {
        "alpha": alpha,
        "n": n,
        "volume": volume,
        "j_alpha": first_zero(alpha),
        "sharp_constant": sharp_constant(alpha, n, volume),
    }
    return result, None


def extremal_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Sample the extremal profile and certify it against its equation."""
    params = config.parameters
    alpha, n, R = params["alpha"], params["n"], params["R"]
    profile = extremal_profile(alpha, n, R, params["M"], params["grading"])
    eigenvalue = (first_zero(alpha) / R) ** 2
    residual = euler_lagrange_residual(profile, alpha, n, eigenvalue)
    result = {
        "alpha": params["alpha"],
        "n": params["n"],
        "profile": _profile_summary(profile),
        "sharp_constant": eigenvalue,
        "euler_lagrange_residual": residual,
    }
    return result, profile.to_csv()


def eigen_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Minimize the radial Rayleigh quotient."""
    params = config.parameters
    alpha, R = params["alpha"], params["R"]
    mu, profile = radial_eigen_min(alpha, params["n"], R, params["M"], params["grading"])
    target = (first_zero(alpha) / R) ** 2
    result = {
        "alpha": params["alpha"],
        "n": params["n"],
        "eigenvalue": mu,
        "j_alpha_squared": target,
        "relative_error": abs(mu - target) / target,
        "profile": _profile_summary(profile),
    }
    return result, profile.to_csv()


def _grid_input(config: RunConfig, rng: np.random.Generator) -> GridFunction:
    params = config.parameters
    if params.get("input"):
        return GridFunction.read(params["input"])
    n, size, half_width = params["n"], params["grid"], params["half_width"]
    h = 2 * half_width / size
    return random_bump_function((size,) * n, h, rng, params["radius"])


def rearrange_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Symmetrize a grid function and run the rearrangement checks."""
    rng = np.random.default_rng(config.seed)
    u = _grid_input(config, rng)
    spec = _load_norm(config, u.n)
    report, _ = rearrangement_report(u, spec, config.parameters["slack_constant"])
    return report.model_dump(mode="json"), None


def verify_bpv_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Evaluate the BPV inequality on random or given grid functions."""
    params = config.parameters
    rng = np.random.default_rng(config.seed)
    cases = 1 if params.get("input") else params["cases"]
    budget = ConfigLoader().get_uniformity_budget()
    reports = []
    for _ in range(cases):
        u = _grid_input(config, rng)
        spec = _load_norm(config, u.n)
        lF = uniformity_constant(spec, budget) if u.n >= 3 else None
        volume = params.get("domain_volume") or math.prod(s * u.h for s in u.shape)
        report = verify_bpv_grid(
            u, spec, params["alpha"], volume, params["slack_constant"], lF=lF
        )
        reports.append(report.model_dump(mode="json"))
    result = {"reports": reports, "passed": all(r["passed"] for r in reports)}
    return result, None


def _volume_profile(text: str, n: int) -> VolumeProfile:
    kind, _, argument = text.partition(":")
    if kind in ("euclid", "euclidean"):
        return VolumeProfile.euclidean(n)
    if kind == "scaled":
        return VolumeProfile.scaled_flat(n, float(argument))
    if kind == "table":
        return VolumeProfile.from_csv(n, argument)
    if kind == "power":
        values = [float(v) for v in argument.split(",")]
        return VolumeProfile.parametric(n, power_deficiency(*values))
    raise PreconditionError(f"unknown volume profile {text!r}")


def rigidity_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Evaluate the rigidity functional and the flatness verdict."""
    params = config.parameters
    vp = _volume_profile(params["profile"], params["n"])
    rtol = ConfigLoader().get_verdict_factor()
    report = rigidity_report(vp, params["alpha"], params["n"], params["r"], rtol=rtol)
    rho = params["r"] * np.arange(1, VOLUME_TABLE_POINTS + 1) / VOLUME_TABLE_POINTS
    rows = zip(rho.tolist(), np.asarray(vp.volume(rho)).tolist())
    return report.model_dump(mode="json", by_alias=True), _csv(["rho", "vol"], rows)


def pde_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Solve the radial problem or sweep lambda across the threshold."""
    params = config.parameters
    residual_factor = ConfigLoader().get_pde_residual_factor()
    if params.get("sweep"):
        reports = threshold_sweep(
            params["alpha"],
            params["n"],
            params["p"],
            M=params["mesh"],
            attempts=params["attempts"],
            seed=config.seed,
            workers=params["workers"],
            grading=params["grading"],
            residual_factor=residual_factor,
        )
        return {"sweep": [r.model_dump(mode="json", by_alias=True) for r in reports]}, None
    problem = PdeProblem(alpha=params["alpha"], n=params["n"], p=params["p"], lam=params["lambda"])
    solution = solve(
        problem,
        M=params["mesh"],
        attempts=params["attempts"],
        grading=params["grading"],
        seed=config.seed,
        workers=params["workers"],
        residual_factor=residual_factor,
    )
    if solution.inconclusive:
        logger.warning(solution.label)
    report = solution_report(solution)
    return report.model_dump(mode="json", by_alias=True), solution.profile.to_csv()


def selftest_command(config: RunConfig) -> Tuple[Any, Optional[str]]:
    """Run the invariant suite."""
    settings = ConfigLoader().get_selftest_settings()
    report = run_selftest(
        seed=config.seed,
        eigen_mesh=settings["eigen_mesh"],
        grid_size=settings["grid_size"],
        random_cases=settings["random_cases"],
    )
    return report.model_dump(mode="json"), None


HANDLERS: Dict[str, Handler] = {
    "bessel": bessel_command,
    "zeros": zeros_command,
    "sharp-constant": sharp_constant_command,
    "extremal": extremal_command,
    "eigen": eigen_command,
    "rearrange": rearrange_command,
    "verify-bpv": verify_bpv_command,
    "rigidity": rigidity_command,
    "pde": pde_command,
    "selftest": selftest_command,
}


def _passed(result: Any) -> bool:
    if isinstance(result, dict) and "passed" in result:
        return bool(result["passed"])
    return True


def _emit(config: RunConfig, text: str) -> None:
    if config.output:
        path = Path(config.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"Wrote {config.format} output to {path}")
    else:
        sys.stdout.write(text)


def _log_run(
    config: RunConfig, duration: float, exit_code: int, result: Any, error: Optional[str]
) -> None:
    if not config.log_run:
        return
    # imported lazily so runs with --no-log never touch the database
    from minkowski_bpv.database.database_manager import DatabaseManager

    try:
        DatabaseManager().log_run(
            command=config.command,
            duration_seconds=duration,
            exit_code=exit_code,
            config=config.model_dump(),
            result=result,
            seed=config.seed,
            error_message=error,
        )
    except SQLAlchemyError as exc:
        logger.warning(f"Could not write the run log: {exc}")


def run(config: RunConfig) -> int:
    """Execute one subcommand and write its payload.

    Args:
        config (RunConfig): The resolved configuration.

    Returns:
        int: 0 on success, 1 on a failed check or numerical failure, 2 on a
            violated precondition.
    """
    loader = ConfigLoader()
    start = time.perf_counter()
    result: Any = None
    error: Optional[str] = None
    try:
        result, table = HANDLERS[config.command](config)
        exit_code = EXIT_OK if _passed(result) else EXIT_FAILURE
        if config.format == "csv" and table is not None:
            _emit(config, table)
        else:
            payload = {
                "command": config.command,
                "config": config.model_dump(),
                "result": result,
                "tolerances": loader.get_config()["tolerances"],
            }
            _emit(config, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    except (PreconditionError, ValidationError, OSError) as exc:
        error = str(exc)
        exit_code = EXIT_USAGE
        print(f"minkowski-bpv {config.command}: error: {error}", file=sys.stderr)
    except (ConvergenceError, RigidityError) as exc:
        error = str(exc)
        exit_code = EXIT_FAILURE
        logger.error(f"{config.command} failed: {error}")
    duration = time.perf_counter() - start
    _log_run(config, duration, exit_code, result, error)
    return exit_code


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Random seed (BPV_SEED overrides it)")
    common.add_argument("--norm", help="JSON norm specification file")
    common.add_argument("--output", help="Write the output to this path instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")
    common.add_argument(
        "--no-log", action="store_true", help="Do not record the run in the database"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    loader = ConfigLoader()
    mesh_size = loader.get_mesh_size()
    grading = loader.get_mesh_grading()
    slack_constant = loader.get_slack_constant()
    pde_settings = loader.get_pde_settings()

    parser = argparse.ArgumentParser(description="Minkowski BPV CLI")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")
    common = _common_flags()

    bessel = subparsers.add_parser("bessel", parents=[common], help="Evaluate J_alpha and J'_alpha")
    bessel.add_argument("--alpha", type=float, required=True, help="Order")
    bessel.add_argument("--t", type=float, nargs="+", required=True, help="Arguments")

    zeros = subparsers.add_parser("zeros", parents=[common], help="Zeros of J_alpha")
    zeros.add_argument("--alpha", type=float, required=True, help="Order")
    zeros.add_argument("--count", type=int, default=10, help="Number of zeros")

    constant = subparsers.add_parser("sharp-constant", parents=[common], help="Sharp BPV constant")
    constant.add_argument("--alpha", type=float, required=True, help="Order")
    constant.add_argument("--n", type=int, required=True, help="Dimension")
    constant.add_argument("--volume", type=float, required=True, help="Domain volume")

    for name, help_text in (("extremal", "Extremal profile"), ("eigen", "Radial eigenvalue")):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--alpha", type=float, required=True, help="Order")
        sub.add_argument("--n", type=int, required=True, help="Dimension")
        sub.add_argument("--R", type=float, default=1.0, help="Wulff ball radius")
        sub.add_argument("--M", type=int, default=mesh_size, help="Mesh size")
        sub.add_argument("--grading", type=float, default=grading, help="Mesh grading exponent")

    grid_commands = (("rearrange", "Rearrangement checks"), ("verify-bpv", "Discrete BPV check"))
    for name, help_text in grid_commands:
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--n", type=int, default=2, help="Dimension of random test functions")
        sub.add_argument("--grid", type=int, default=64, help="Cells per axis")
        sub.add_argument("--half-width", type=float, default=1.25, help="Lattice half width")
        sub.add_argument("--radius", type=float, default=1.0, help="Support radius")
        sub.add_argument("--input", help="Grid function text file instead of a random one")
        sub.add_argument("--slack-constant", type=float, default=slack_constant, help="Constant C")
        if name == "verify-bpv":
            sub.add_argument("--alpha", type=float, default=0.0, help="Order")
            sub.add_argument("--cases", type=int, default=1, help="Number of random functions")
            sub.add_argument(
                "--domain-volume", type=float, help="Domain volume (lattice box by default)"
            )

    rigidity = subparsers.add_parser("rigidity", parents=[common], help="Rigidity functional")
    rigidity.add_argument(
        "--profile",
        default="euclid",
        help="euclid | scaled:c | table:FILE | power:a[,k[,s]]",
    )
    rigidity.add_argument("--alpha", type=float, required=True, help="Order")
    rigidity.add_argument("--n", type=int, required=True, help="Dimension")
    rigidity.add_argument("--r", type=float, default=1.0, help="Radius")

    pde = subparsers.add_parser("pde", parents=[common], help="Radial PDE solver")
    pde.add_argument("--alpha", type=float, required=True, help="Order")
    pde.add_argument("--n", type=int, required=True, help="Dimension")
    pde.add_argument("--p", type=float, required=True, help="Exponent of the nonlinearity")
    pde.add_argument("--lambda", dest="lam", type=float, default=0.0, help="lambda")
    pde.add_argument("--mesh", type=int, default=int(pde_settings["mesh"]), help="Mesh size")
    pde.add_argument(
        "--grading", type=float, default=pde_settings["grading"], help="Mesh grading exponent"
    )
    pde.add_argument(
        "--attempts", type=int, default=int(pde_settings["attempts"]), help="Multistart attempts"
    )
    pde.add_argument("--workers", type=int, default=1, help="Threads for the attempts")
    pde.add_argument("--sweep", action="store_true", help="Sweep lambda across the threshold")

    subparsers.add_parser("selftest", parents=[common], help="Run the invariant suite")
    return parser


COMMON_KEYS = {"command", "verbose", "seed", "norm", "output", "format", "no_log"}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Resolve the parsed arguments into a RunConfig."""
    parameters = {k: v for k, v in vars(args).items() if k not in COMMON_KEYS}
    if "lam" in parameters:
        parameters["lambda"] = parameters.pop("lam")
    return RunConfig(
        command=args.command,
        seed=ConfigLoader().get_seed(args.seed),
        norm=args.norm,
        output=args.output,
        format=args.format,
        log_run=not args.no_log,
        parameters=parameters,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
