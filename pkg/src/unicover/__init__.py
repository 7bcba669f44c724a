"""Root systems, marked Dynkin diagrams and unipotent classes with covering-number bounds."""

from .root_system import Coweight, RootSystem, RootSystemError, build_root_system
from .diagram import MarkedDiagram, parse_diagram, render_diagram, normalize, hat_I
from .classes import BalaCarterClass, enumerate_classes, parse_class, render_class
from .bounds import BoundReport, best_bound
from .verify import VerificationReport

__all__ = [
    "BalaCarterClass",
    "BoundReport",
    "Coweight",
    "MarkedDiagram",
    "RootSystem",
    "RootSystemError",
    "VerificationReport",
    "best_bound",
    "build_root_system",
    "enumerate_classes",
    "hat_I",
    "normalize",
    "parse_class",
    "parse_diagram",
    "render_class",
    "render_diagram",
]
