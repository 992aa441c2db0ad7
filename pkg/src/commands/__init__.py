"""
Commands package for the CLI
One module per subcommand family; `src/app.py` wires them to argparse
"""

from .certify import run_certify
from .compare import run_garnier_compare, run_pvi_compare
from .integrate import run_integrate
from .lax import run_lax
from .symmetry import run_symmetry

COMMANDS = {
    "certify": run_certify,
    "integrate": run_integrate,
    "symmetry": run_symmetry,
    "lax": run_lax,
    "pvi-compare": run_pvi_compare,
    "garnier-compare": run_garnier_compare,
}

__all__ = [
    'COMMANDS', 'run_certify', 'run_integrate', 'run_symmetry', 'run_lax', 'run_pvi_compare',
    'run_garnier_compare',
]
