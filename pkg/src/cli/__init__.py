"""
Command-line interface: config parsing, result files and subcommands.
"""
from src.cli.config_io import parse_and_validate, validate_config_data
from src.cli.main import build_parser, main
from src.cli.writers import TRACE_HEADER, build_summary, write_summary, write_trace

__all__ = [
    "TRACE_HEADER",
    "build_parser",
    "build_summary",
    "main",
    "parse_and_validate",
    "validate_config_data",
    "write_summary",
    "write_trace",
]
