"""Quality assessment of RDF knowledge graphs with SHACL-core shape templates."""

from .config import Config, ConfigError, load_config
from .engine import ValidationReport, Validator, validate
from .measures import MeasureRecord, compute_all
from .pipeline import InputError, Inputs, RunResult, run
from .shapes.catalog import catalog, lookup, render_template

__version__ = "0.1.0"

__all__ = [
    "Config",
    "ConfigError",
    "InputError",
    "Inputs",
    "MeasureRecord",
    "RunResult",
    "ValidationReport",
    "Validator",
    "catalog",
    "compute_all",
    "load_config",
    "lookup",
    "render_template",
    "run",
    "validate",
]
