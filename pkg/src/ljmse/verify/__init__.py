"""Generators and property suites."""
from .gen import GenConfig, gen_typed
from .suites import SUITES, Report, run_suites

__all__ = ["GenConfig", "gen_typed", "SUITES", "Report", "run_suites"]
