"""Exception types raised across the package."""


class CtrltopoError(Exception):
    """Base class for all package-specific errors."""


class NoPerfectMatching(CtrltopoError):
    """The bipartite graph admits no matching saturating every left vertex."""


class NotSpannable(CtrltopoError):
    """Some vertex is unreachable from the requested arborescence root."""


class InadmissibleEdge(CtrltopoError):
    """An interconnection edge is not permitted by the neighbor structure."""


class Stage1Infeasible(CtrltopoError):
    """No perfect matching exists even with every candidate interconnection."""


class Stage2Infeasible(CtrltopoError):
    """Full accessibility cannot be reached even with every candidate interconnection."""


class Infeasible(CtrltopoError):
    """The instance cannot be made structurally controllable by any admissible design.

    Carries diagnostics: which states stay inaccessible and how large the
    matching deficiency remains when every candidate edge is present.
    """

    def __init__(self, message, inaccessible_states=(), matching_deficiency=0):
        super().__init__(message)
        self.inaccessible_states = tuple(inaccessible_states)
        self.matching_deficiency = int(matching_deficiency)


class NoModes(CtrltopoError):
    """A switched-system operation was invoked on an instance without modes."""


class TooLarge(CtrltopoError):
    """The exhaustive oracle refuses instances above its configured cap."""


class FormatError(CtrltopoError, ValueError):
    """An instance, edge, or graph document failed to parse or validate."""
