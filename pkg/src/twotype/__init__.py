"""Two-type random graph models.

Generators and analyses for two-type versions of the Erdos-Renyi graph, the
configuration model and a preferential attachment tree, together with the
closed-form critical parameters and degree exponents of those models.
"""

__version__ = "0.1.0"

from .core import (
    EdgeListFormatError,
    InfeasibleParametersError,
    RngStream,
    TypedGraph,
    VertexType,
    read_edge_list,
    total_and_per_type_degrees,
    write_edge_list,
)

__all__ = [
    "__version__",
    "EdgeListFormatError",
    "InfeasibleParametersError",
    "RngStream",
    "TypedGraph",
    "VertexType",
    "read_edge_list",
    "total_and_per_type_degrees",
    "write_edge_list",
]
