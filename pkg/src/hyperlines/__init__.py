"""Red/blue lines in bi-coloured 3-uniform hypergraph systems."""

from .core import (
    BLUE,
    RED,
    CapabilityError,
    Colour,
    Colouring,
    GeneratingPairMap,
    LineSummary,
    PointSet,
    canonical,
    complement,
    generating_pairs,
    line,
    line_size_distribution,
    max_red_intersection,
    permute,
    summarize,
    triple_rank,
)

__version__ = "0.1.0"
