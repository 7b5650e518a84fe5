"""evograph: represent, lay out, measure, and animate evolving graphs.

The pieces: an EGML parser/serializer (the interchange format), force-
directed layout algorithms that minimize vertex movement between graph
instances, total-distance metrics, synthetic and real-data graph builders,
SVG/CSV renderers, a CLI, and an HTTP service for the interactive viewer.
"""

from .egml import (EgmlDocument, MetricRecord, ValidationIssue, attach_metric,
                   parse_egml, read_egml, serialize_egml, validate, write_egml)
from .errors import (CoverageError, EgmlError, EvographError, GraphModelError,
                     IngestError)
from .estimators import (CircularLayout, FruchtermanReingoldLayout,
                         RandomPlacement, VectorOptimizationLayout,
                         VertexOptimizationLayout)
from .generators import (example_eg, gen_exponential_eg, gen_random_eg,
                         gen_scalefree_eg, generate)
from .layout import (EvolvingLayout, ForceVector, LayoutConfig,
                     attractive_force, circular_layout, displace, fr_layout,
                     independent_layout, is_unsmooth, layout_from_graph,
                     random_placement, repulsive_force, store_layout,
                     vector_optimization, vertex_optimization)
from .metrics import (DistanceReport, distance_report, total_distance,
                      total_distance_per_graph, total_distance_per_vertex)
from .model import (EvolvingGraph, Frame, GraphDelta, GraphInstance, Position,
                    apply_delta, diff, instance_window, shared_vertices)

__version__ = "0.1.0"
