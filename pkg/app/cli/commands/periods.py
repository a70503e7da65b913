"""
Period map commands: period, invert
"""
import argparse

from app.cli.dependencies import get_identities_service, get_period_service
from app.cli.output import emit
from app.cli.parsing import ball_vector, floats
from app.models.cli import CliConfig, ValueTable
from app.models.periods import BranchPoints

def period(args: argparse.Namespace, config: CliConfig) -> int:
    """Period vector v(x) with its calibration, v*Uv and the six segment integrals"""
    x = BranchPoints.of(floats(args.x))
    pv = get_period_service(config).period_vector(x)
    pairs = [(f"v{k + 1}", z) for k, z in enumerate(pv.v)]
    pairs += [("calibration", pv.calibration), ("form", pv.form)]
    pairs += [(seg.name, val) for seg, val in sorted(pv.segments.items(), key=lambda item: item[0].name)]
    emit(ValueTable.build("period", pairs), config)
    return 0

def invert(args: argparse.Namespace, config: CliConfig) -> int:
    """x(v) from the theta quotients"""
    xs = get_identities_service(config).x_of_v(ball_vector(floats(args.ball)))
    emit(ValueTable.build("invert", [(f"x{k + 1}", z) for k, z in enumerate(xs)]), config)
    return 0

def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("period", parents=[common], help="Period vector at 0 < x1 <= x2 <= x3 < 1")
    parser.add_argument("x", nargs=3, help="x1 x2 x3")
    parser.set_defaults(handler=period)

    parser = subparsers.add_parser("invert", parents=[common], help="Branch points x(v) of a ball point")
    parser.add_argument("--ball", nargs="+", required=True, help="Ball vector: 4 reals or 8 (re, im) values")
    parser.set_defaults(handler=invert)
