"""
Rendering of command results as text, JSON or CSV
"""
import logging
import sys
from typing import Optional

import polars as pl
from pydantic import BaseModel

from app.enums.output_format import OutputFormat
from app.models.cli import CliConfig

logger = logging.getLogger(__name__)

def render(result: BaseModel, fmt: OutputFormat) -> str:
    """JSON uses the model (aliases on), text and CSV use its frame"""
    match fmt:
        case OutputFormat.JSON:
            return result.model_dump_json(by_alias=True, indent=2) + "\n"
        case OutputFormat.CSV:
            return result.to_frame().write_csv()
        case _:
            with pl.Config(tbl_rows=-1, tbl_cols=-1, fmt_str_lengths=80, tbl_width_chars=160, float_precision=12):
                return f"{result.to_frame()}\n"

def emit(result: BaseModel, config: CliConfig, header: Optional[str] = None) -> None:
    """Write the rendered result to --output or stdout"""
    text = render(result, config.format)
    if header and config.format == OutputFormat.TEXT:
        text = f"{header}\n{text}"
    if config.output is not None:
        config.output.write_text(text)
        logger.info("Wrote %s output to %s", config.format.value, config.output)
    else:
        sys.stdout.write(text)

def write_frame_csv(frame: pl.DataFrame, path: str) -> None:
    frame.write_csv(path)
    logger.info("Wrote %d rows to %s", frame.height, path)
