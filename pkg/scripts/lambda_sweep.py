#!/usr/bin/env python
"""Script to sweep lambda across the existence threshold of the radial problem."""

import argparse
import csv
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

# Add the parent directory to the Python path if running directly
parent_dir = Path(__file__).parent.parent
if parent_dir not in sys.path:
    sys.path.insert(0, str(parent_dir))

from minkowski_bpv.config.config_loader import ConfigLoader
from minkowski_bpv.database.database_manager import DatabaseManager
from minkowski_bpv.pde import DEFAULT_OFFSETS, PdeReport, threshold_sweep

COLUMNS = [
    "offset",
    "lambda",
    "nonzero",
    "inconclusive",
    "energy",
    "residual",
    "sup_norm",
    "necessity_gap",
]


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


def write_table(reports: List[PdeReport], path: Optional[str] = None) -> None:
    """Write one CSV row per solve to ``path`` or stdout.

    Args:
        reports (List[PdeReport]): Reports sorted by lambda.
        path (Optional[str], optional): Output file. Defaults to None.
    """
    handle = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(COLUMNS)
        for report in reports:
            writer.writerow(
                [
                    report.offset,
                    report.lam,
                    report.nonzero,
                    report.inconclusive,
                    report.energy,
                    report.residual,
                    report.sup_norm,
                    report.necessity_gap,
                ]
            )
    finally:
        if path:
            handle.close()


def main() -> None:
    """Run the script."""
    config_loader = ConfigLoader()
    pde_settings = config_loader.get_pde_settings()

    parser = argparse.ArgumentParser(
        description="Sweep lambda across -j_alpha^2 and record which solves find a solution."
    )
    parser.add_argument("--alpha", type=float, required=True, help="Order")
    parser.add_argument("--n", type=int, required=True, help="Dimension")
    parser.add_argument("--p", type=float, required=True, help="Exponent of the nonlinearity")
    parser.add_argument(
        "--offsets",
        type=float,
        nargs="+",
        default=list(DEFAULT_OFFSETS),
        help="Offsets of lambda from the threshold",
    )
    parser.add_argument("--mesh", type=int, default=int(pde_settings["mesh"]), help="Mesh size")
    parser.add_argument(
        "--grading", type=float, default=pde_settings["grading"], help="Mesh grading exponent"
    )
    parser.add_argument(
        "--attempts", type=int, default=int(pde_settings["attempts"]), help="Multistart attempts"
    )
    parser.add_argument("--workers", type=int, default=1, help="Threads for the attempts")
    parser.add_argument("--seed", type=int, help="Random seed (BPV_SEED overrides it)")
    parser.add_argument("-o", "--output", type=str, help="CSV file (stdout by default)")
    parser.add_argument("--no-log", action="store_true", help="Do not record the run")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose logging"
    )
    args = parser.parse_args()

    setup_logging(args.verbose)
    seed = config_loader.get_seed(args.seed)

    start = time.perf_counter()
    reports = threshold_sweep(
        args.alpha,
        args.n,
        args.p,
        offsets=args.offsets,
        M=args.mesh,
        attempts=args.attempts,
        seed=seed,
        workers=args.workers,
        grading=args.grading,
        residual_factor=config_loader.get_pde_residual_factor(),
    )
    duration = time.perf_counter() - start
    write_table(reports, args.output)

    inconclusive = sum(r.inconclusive for r in reports)
    if inconclusive:
        logging.warning(f"{inconclusive} of {len(reports)} solves were inconclusive")

    if not args.no_log:
        DatabaseManager().log_run(
            command="lambda-sweep",
            duration_seconds=duration,
            exit_code=0,
            config={k: v for k, v in vars(args).items() if k not in ("verbose", "no_log")},
            result=[r.model_dump(mode="json", by_alias=True) for r in reports],
            seed=seed,
        )


if __name__ == "__main__":
    main()
