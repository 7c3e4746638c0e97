"""Exception types shared across the package.

Errors that certify non-membership in a graph class derive from
CertificateError and carry a machine-checkable witness in their
``certificate`` attribute, so callers (and the CLI, which maps them to
exit code 2) can replay the evidence.
"""


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(GraphError):
    """Malformed graph text: bad header, loops, duplicates, out-of-range ids."""


class DisconnectedGraphError(GraphError):
    """The input graph is not connected; all operations require connectivity."""


class ParityError(GraphError):
    """A hop bound is incompatible with the bipartition parity of the query."""


class MissingDataError(GraphError):
    """An eccentricity case needs side data that the caller did not supply."""


class SizeLimitError(GraphError):
    """Input exceeds the size limit of an exhaustive checker."""


class CertificateError(GraphError):
    """Failure that certifies the input lies outside the promised class."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotBipartiteError(CertificateError):
    """Certificate: an odd closed cycle, as a vertex sequence."""


class NotRetractError(CertificateError):
    """Certificate: the refinement step or coloring step that failed."""


class NotDualHypertreeError(CertificateError):
    """Neighborhood hypergraph admits no join tree; input is not chordal bipartite."""


class GateMissingError(CertificateError):
    """A computed gate candidate fails its domination property."""


class NoCentralVertexError(CertificateError):
    """Central-vertex search exhausted all three candidate radii."""


class NotSplitError(CertificateError):
    """Certificate: an induced 2K2, C4 or C5 vertex tuple."""


class NotPlanarEmbeddingError(CertificateError):
    """Rotation system fails the Euler face-count test."""


class NotBiconnectedError(CertificateError):
    """Operation requires a biconnected embedding but found a cut vertex."""
