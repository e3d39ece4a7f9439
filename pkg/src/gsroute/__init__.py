"""Graph-state routing: local complementation, measurement rewrites, and protocols."""

from .errors import (
    DisconnectedError,
    GraphDomainError,
    GsrouteError,
    HypothesisError,
    ProtocolError,
    SizeBoundError,
    ZeroProbabilityError,
)
from .graph import (
    LabeledGraph,
    combined_neighborhood,
    edge_set_between,
    local_complement,
    measure_x,
    measure_x_via_complementations,
    measure_y,
    measure_z,
    neighborhood,
    restrict_incident,
    symmetric_difference,
)
from .paths import (
    PathQuery,
    PathSearchResult,
    VertexPath,
    min_neighborhood_shortest_path,
    shortest_path,
)
from .protocols import (
    EprResult,
    Ghz4Result,
    ProtocolTranscript,
    Step,
    TwoPairRouteResult,
    butterfly_route,
    ghz3_extract,
    ghz4_extract,
    repeater_protocol,
    validate_transcript,
    x_measurements_as_complementations,
    x_protocol,
)
from .orbit import (
    OrbitRecord,
    VertexMinorResult,
    find_repeater_line,
    lc_equivalent,
    lc_orbit,
    vertex_minor,
)
from .bottleneck import (
    SearchReport,
    SolvableResult,
    TwoPairInstance,
    has_bottleneck,
    scan_all,
    solvable,
)
from .quantum import (
    QuantumState,
    apply_lc_unitary,
    find_local_correction,
    measure_pauli,
    prepare_graph_state,
    verify_graph,
)

__version__ = "0.1.0"

__all__ = [
    "DisconnectedError",
    "EprResult",
    "Ghz4Result",
    "GraphDomainError",
    "GsrouteError",
    "HypothesisError",
    "LabeledGraph",
    "OrbitRecord",
    "PathQuery",
    "PathSearchResult",
    "ProtocolError",
    "ProtocolTranscript",
    "QuantumState",
    "SearchReport",
    "SizeBoundError",
    "SolvableResult",
    "Step",
    "TwoPairInstance",
    "TwoPairRouteResult",
    "VertexMinorResult",
    "VertexPath",
    "ZeroProbabilityError",
    "apply_lc_unitary",
    "butterfly_route",
    "combined_neighborhood",
    "edge_set_between",
    "find_local_correction",
    "find_repeater_line",
    "ghz3_extract",
    "ghz4_extract",
    "has_bottleneck",
    "lc_equivalent",
    "lc_orbit",
    "local_complement",
    "measure_pauli",
    "measure_x",
    "measure_x_via_complementations",
    "measure_y",
    "measure_z",
    "min_neighborhood_shortest_path",
    "neighborhood",
    "prepare_graph_state",
    "repeater_protocol",
    "restrict_incident",
    "scan_all",
    "shortest_path",
    "solvable",
    "symmetric_difference",
    "validate_transcript",
    "verify_graph",
    "vertex_minor",
    "x_measurements_as_complementations",
    "x_protocol",
]
