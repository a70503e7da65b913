"""
Verification command: run one suite or all of them
"""
import argparse
import logging

from app.cli.dependencies import get_identities_service
from app.cli.output import emit
from app.cli.parsing import UsageError, floats
from app.models.cli import CliConfig, VerifyResult
from app.services.identities_service import SUITES

logger = logging.getLogger(__name__)

DEFAULT_X = ("0.2", "0.5", "0.8")
DEFAULT_QUAD = ("1", "0.8", "0.6", "0.4")

def verify(args: argparse.Namespace, config: CliConfig) -> int:
    """
    Run the requested suites

    Returns:
        int: 0 if every check passes, 1 otherwise
    """
    x = floats(args.x)
    quad = floats(args.quad)
    perturb = None
    if args.perturb is not None:
        index, delta = floats(args.perturb)
        if not index.is_integer() or not 0 <= index < 3:
            raise UsageError(f"--perturb index must be 0, 1 or 2, got {index}")
        perturb = (int(index), delta)

    service = get_identities_service(config)
    if args.suite == "all":
        reports = service.verify_all(x, quad, seed=config.seed, perturb=perturb)
    else:
        reports = [service.run_suite(args.suite, x, quad, seed=config.seed, perturb=perturb)]

    result = VerifyResult.build(config.seed, reports)
    for report in result.suites:
        for check in report.failures:
            logger.warning("%s: %s failed (residual %.3e, tol %.1e)", report.suite, check.id, check.residual, check.tol)
    status = "PASS" if result.passed else "FAIL"
    emit(result, config, header=f"{status}: {', '.join(r.suite for r in result.suites)}")
    return 0 if result.passed else 1

def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="Run verification suites")
    parser.add_argument("suite", choices=[*SUITES, "all"])
    parser.add_argument("--x", nargs=3, default=DEFAULT_X, help="Branch points x1 x2 x3")
    parser.add_argument("--quad", nargs=4, default=DEFAULT_QUAD, help="Mean seed a b c d; two-term means use a b")
    parser.add_argument("--perturb", nargs=2, default=None, metavar=("INDEX", "DELTA"), help="Shift x[INDEX] by DELTA on the x side")
    parser.set_defaults(handler=verify)
