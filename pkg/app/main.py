"""
Main entry point for the command-line application
"""
import logging
import sys
from typing import Optional, Sequence

from app.cli.parsing import UsageError
from app.cli.routes import build_parser
from app.core.config import settings
from app.core.exceptions import ConsistencyError, ConvergenceError, DomainError
from app.models.cli import CliConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERIC = 4

def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, configure logging and dispatch to the sub-command

    Returns:
        int: 0 pass, 1 failed verification, 2 usage error, 3 domain error,
        4 convergence or consistency error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=str(args.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug("Starting %s %s: %s", settings.PROJECT_NAME, settings.VERSION, args.command)

    try:
        config = CliConfig.from_namespace(args)
        return args.handler(args, config)
    except UsageError as e:
        logger.error("usage: %s", str(e))
        return EXIT_USAGE
    except (ConvergenceError, ConsistencyError) as e:
        logger.error("numerical failure: %s", str(e))
        return EXIT_NUMERIC
    except (DomainError, ValueError) as e:
        # pydantic ValidationError is a ValueError
        logger.error("domain error: %s", str(e))
        return EXIT_DOMAIN
    except Exception as e:
        logger.exception("Failed to run %s: %s", args.command, str(e))
        return EXIT_NUMERIC

if __name__ == "__main__":
    sys.exit(run())
