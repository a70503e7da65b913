"""
Main command router that registers all sub-command parsers
"""
import argparse

from app.cli.commands import means, periods, theta, verify
from app.cli.parsing import common_options
from app.core.config import settings

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="theta-agm", description=settings.PROJECT_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level (default from settings)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = common_options()
    means.register(subparsers, common)
    theta.register(subparsers, common)
    periods.register(subparsers, common)
    verify.register(subparsers, common)
    return parser
