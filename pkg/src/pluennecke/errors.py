"""Exception types shared across the package."""


class PluenneckeError(ValueError):
    """Base class for rejected inputs."""


class GraphError(PluenneckeError):
    """A graph, vertex set or document violates a structural invariant."""


class CapExceeded(PluenneckeError):
    """An exhaustive search or construction would exceed its configured cap."""


class HypothesisNotMet(PluenneckeError):
    """The input does not satisfy the hypotheses an operation relies on."""
