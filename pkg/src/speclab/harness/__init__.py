"""Campaigns, verification suites, CSV/SVG reports and the command line."""
from .campaign import Campaign, ReportRow, compute_spectrum, default_campaigns, run_ladder, run_suite
from .config import campaign_from_text, load_campaign
from .domain_spec import format_domain, parse_domain
from .report import csv_text, emit_csv, emit_plot, read_csv, svg_text
from .suites import SuiteResult

__all__ = [
    "Campaign", "ReportRow", "compute_spectrum", "default_campaigns", "run_ladder", "run_suite",
    "campaign_from_text", "load_campaign", "format_domain", "parse_domain", "csv_text",
    "emit_csv", "emit_plot", "read_csv", "svg_text", "SuiteResult",
]
