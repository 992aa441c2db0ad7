"""
UC-reduction toolkit CLI
Certifies the Hamiltonian reduction of the UC hierarchy and runs its diagnostics

This is the command-line entrypoint:
- Parses the shared flags (`--config`, `--seed`, `--out`, `--mode`)
- Loads and validates the JSON config (errors exit with code 2)
- Dispatches to the subcommands registered in `src/commands/`

Usage:

    python src/app.py certify --config configs/certify.json
    python src/app.py symmetry --config configs/symmetry.json --seed 3
    python src/app.py integrate --config configs/integrate.json --out ./reports

Exit codes: 0 pass, 1 identity failure, 2 config error, 3 computation error,
4 integration aborted at the singular locus.
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from commands import COMMANDS
from dependencies import LIBRARY_VERSION, OBSERVABILITY_ENABLED, alert_manager, logger, metrics_collector
from errors import EXIT_CONFIG_ERROR, ConfigError
from models import load_config


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", type=str, default=None, help="JSON config file.")
    shared.add_argument("--seed", type=int, default=None, help="Seed for random draws (overrides the config).")
    shared.add_argument("--out", type=str, default=None, help="Output directory for reports.")
    shared.add_argument("--mode", choices=["exact", "float"], default=None, help="Arithmetic for random checks.")

    parser = argparse.ArgumentParser(
        prog="uch",
        description="Certification and diagnostics for the Hamiltonian structure of the UC hierarchy.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {LIBRARY_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("certify", parents=[shared], help="Exact certification of the configured σ-grids.")
    sub.add_parser("integrate", parents=[shared], help="Float integration along a path in s.")
    sub.add_parser("symmetry", parents=[shared], help="Relations, canonicity and transport of solutions.")
    sub.add_parser("lax", parents=[shared], help="Lax pair, Riemann scheme and deformation equations.")
    sub.add_parser("pvi-compare", parents=[shared], help="N = 1 reduction to the P_VI Hamiltonian.")
    sub.add_parser("garnier-compare", parents=[shared], help="L = 2 reduction to the Garnier Hamiltonian.")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.info(f"uch {LIBRARY_VERSION}: {args.command}")

    try:
        config = load_config(args.config, {"seed": args.seed, "out": args.out, "mode": args.mode})
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e.message}")
        return EXIT_CONFIG_ERROR
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG_ERROR

    exit_code = COMMANDS[args.command](config)

    if OBSERVABILITY_ENABLED:
        for alert in metrics_collector.check_alert_conditions():
            alert_manager.record_alert(alert)
        failing = alert_manager.alerts("high")
        if failing:
            logger.warning(f"{len(failing)} identity ids recorded failures")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
