"""Command-line front end: event files, the expression language and scenarios."""
from .dsl import Evaluation, ExpressionSyntaxError, evaluate, format_expression, parse_expression
from .eventfile import EventFile, EventSpec, format_oie, load_event_file, oie_from_json, oie_json
from .main import main, run

__all__ = [
    "evaluate", "Evaluation", "EventFile", "EventSpec", "ExpressionSyntaxError",
    "format_expression", "format_oie", "load_event_file", "oie_from_json", "oie_json",
    "main", "parse_expression", "run",
]
