"""
Mean, hypergeometric and constant commands: agm, fd, f21, constants
"""
import argparse
import math

from app.cli.dependencies import get_agm_service, get_hypergeom_service, get_identities_service
from app.cli.output import emit, write_frame_csv
from app.cli.parsing import UsageError, floats
from app.enums.mean_kind import MeanKind
from app.models.agm import AgmState
from app.models.cli import CliConfig, ValueTable
from app.models.hypergeom import FDParams
from app.services.agm_service import trace_frame

def agm(args: argparse.Namespace, config: CliConfig) -> int:
    """Iterate a mean to its limit and print the trace"""
    kind = MeanKind(args.kind)
    terms = tuple(floats(args.terms))
    if len(terms) != kind.arity:
        raise UsageError(f"{kind.value} takes {kind.arity} terms, got {len(terms)}")
    trace = get_agm_service(config).mean_limit(kind, AgmState(terms=terms))
    if args.csv:
        write_frame_csv(trace_frame(trace), args.csv)
    emit(trace, config, header=f"limit = {trace.limit!r} after {trace.iterations} iterations")
    return 0

def fd(args: argparse.Namespace, config: CliConfig) -> int:
    """F_D(alpha; betas; gamma; z); the values are alpha, m betas, gamma, then m variables"""
    values = floats(args.values)
    if len(values) < 4 or len(values) % 2:
        raise UsageError("fd takes alpha, m betas, gamma and m variables (m = 1, 2 or 3)")
    m = (len(values) - 2) // 2
    params = FDParams(alpha=values[0], betas=values[1 : m + 1], gamma=values[m + 1])
    z = values[m + 2 :]
    value = get_hypergeom_service(config).lauricella_fd(params, z)
    emit(ValueTable.build("fd", [("F_D", value)]), config)
    return 0

def f21(args: argparse.Namespace, config: CliConfig) -> int:
    alpha, beta, gamma, z = floats([args.alpha, args.beta, args.gamma, args.z])
    value = get_hypergeom_service(config).gauss_2f1(alpha, beta, gamma, z)
    emit(ValueTable.build("f21", [("2F1", value)]), config)
    return 0

def constants(args: argparse.Namespace, config: CliConfig) -> int:
    """kappa, Gamma(3/4), pi / Gamma(3/4)^4 and theta00(i)^2"""
    service = get_identities_service(config)
    scalar = service.scalar_service
    table = ValueTable.build("constants", [
        ("kappa", service.kappa()),
        ("gamma34", scalar.gamma34()),
        ("pi_over_gamma34_4", math.pi / scalar.gamma34() ** 4),
        ("theta00_i_squared", scalar.theta00_at_i() ** 2),
    ])
    emit(table, config)
    return 0

def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("agm", parents=[common], help="Iterate a coupled mean to its limit")
    parser.add_argument("kind", choices=[k.value for k in MeanKind])
    parser.add_argument("terms", nargs="+", help="Initial terms")
    parser.add_argument("--csv", default=None, help="Also write the trace (n, a, b[, c, d]) as CSV")
    parser.set_defaults(handler=agm)

    parser = subparsers.add_parser("fd", parents=[common], help="Lauricella F_D series")
    parser.add_argument("values", nargs="+", help="alpha betas... gamma -- z...")
    parser.set_defaults(handler=fd)

    parser = subparsers.add_parser("f21", parents=[common], help="Gauss hypergeometric series")
    for name in ("alpha", "beta", "gamma", "z"):
        parser.add_argument(name)
    parser.set_defaults(handler=f21)

    parser = subparsers.add_parser("constants", parents=[common], help="Print the fixed constants")
    parser.set_defaults(handler=constants)
