"""Diameter and eccentricity algorithms for absolute retract graph classes."""

from .errors import (
    CertificateError,
    DisconnectedGraphError,
    GraphError,
    GraphFormatError,
    MissingDataError,
    NotBiconnectedError,
    NotBipartiteError,
    NotDualHypertreeError,
    GateMissingError,
    NoCentralVertexError,
    NotPlanarEmbeddingError,
    NotRetractError,
    NotSplitError,
    ParityError,
    SizeLimitError,
)
from .graph import (
    Graph,
    batched_bfs,
    bfs,
    bipartition,
    diameter_oracle,
    dump_graph,
    eccentricities_oracle,
    graph_sha256,
    parse_graph,
    read_graph,
    write_graph,
)
from .generators import SplitInstance, gen_chordal_bipartite, gen_split
from .halfsquare import (
    HalfSquareView,
    half_bfs,
    half_diam_small,
    side_views,
    within_k_of_all,
)
from .sampling import (
    SampleEstimate,
    peripherals_by_sampling_colour,
    peripherals_by_sampling_half,
)
from .bipartite import (
    EccSideData,
    HalfDiamData,
    combine_diameter,
    diameter_absolute_bipartite,
    eccentricity_cases,
)
from .chordal import (
    CliqueTree,
    GateTable,
    all_eccentricities_chordal_bipartite,
    center_set,
    central_vertex,
    clique_tree,
    dump_clique_tree,
    gates,
)
from .verify import (
    Verdict,
    half_ball_helly_sample,
    is_chordal_bipartite_small,
    is_helly_small,
    isometric_check,
)
from .kchromatic import (
    ColoredGraph,
    ColourPartitionState,
    check_characterization,
    color_absolute_retract,
    colour_ecc_at_most,
    di_and_peripherals,
    diam_le_two,
    diameter_k_chromatic,
    dump_colored_graph,
    parse_colored_graph,
    triple_split,
)
from .split import (
    SplitPartition,
    prune_to_retract,
    recognize_absolute_split,
    split_diameter,
    split_partition,
)
from .planar import (
    EmbeddedGraph,
    EmbeddingMap,
    apollonian,
    biconnect,
    dump_embedded,
    embed_into_retract,
    grid_embedded,
    is_absolute_planar_retract,
    parse_embedded,
    shrink_faces,
    sparsify_embedded,
    stellate_all,
    trace_faces,
)

__version__ = "0.1.0"
