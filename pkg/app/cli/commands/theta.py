"""
Theta constant command
"""
import argparse

import numpy as np

from app.cli.dependencies import get_theta_service
from app.cli.output import emit
from app.cli.parsing import UsageError, ball_vector, floats
from app.models.cli import CliConfig, ValueTable
from app.models.theta import Characteristic, SiegelPoint
from app.services.ball_service import BallService

def theta(args: argparse.Namespace, config: CliConfig) -> int:
    """
    theta_{a,b}(tau) for tau read from a file (one row per line, entries like 1+2j)
    or tau = tau(v) for a ball vector
    """
    ch = Characteristic.parse(args.a, args.b)
    service = get_theta_service(config)
    if args.tau_file is not None:
        try:
            tau = np.loadtxt(args.tau_file, dtype=complex, ndmin=2)
        except OSError as e:
            raise UsageError(f"cannot read {args.tau_file}: {str(e)}") from e
        value = service.theta_constant(ch, SiegelPoint(tau=tau), config.accuracy())
    else:
        value = BallService(theta_service=service).theta_ball(ch, ball_vector(floats(args.ball)), config.accuracy())
    emit(ValueTable.build("theta", [(f"theta[{ch}]", value)]), config)
    return 0

def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("theta", parents=[common], help="Theta constant with characteristic (a, b)")
    parser.add_argument("a", help="Upper characteristic, e.g. 1100")
    parser.add_argument("b", help="Lower characteristic, e.g. 0000")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--tau-file", default=None, help="Text file holding tau")
    source.add_argument("--ball", nargs="+", default=None, help="Ball vector: 4 reals or 8 (re, im) values")
    parser.set_defaults(handler=theta)
