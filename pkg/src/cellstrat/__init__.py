"""Exact computations in partition and Brauer algebras and their layer restrictions."""

__version__ = "0.1.0"

from .diagrams import AlgebraElement, DeltaPoly, SetPartitionDiagram, multiply, parse_diagram  # noqa: E402
from .partial import PartialDiagram, parse_partial  # noqa: E402
from .perm import Composition, Permutation, Tabloid  # noqa: E402

__all__ = [
    "__version__",
    "AlgebraElement",
    "DeltaPoly",
    "SetPartitionDiagram",
    "multiply",
    "parse_diagram",
    "PartialDiagram",
    "parse_partial",
    "Composition",
    "Permutation",
    "Tabloid",
]
