"""Workbench for the sequent calculus with generalised multiary application,
explicit substitution and coercions: reduction, typing, the subsystem
spectrum, and CPS/CGPS translations into the lambda-calculus."""
from .reduction import Rule, Step, Trace, all_steps, normalize
from .surface import parse_expr, parse_type, print_expr, print_type
from .typecheck import TypingError, infer, infer_term

__all__ = [
    "Rule", "Step", "Trace", "all_steps", "normalize",
    "parse_expr", "parse_type", "print_expr", "print_type",
    "TypingError", "infer", "infer_term",
]
__version__ = "0.1.0"
