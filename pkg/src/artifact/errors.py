"""Exception types shared across the package."""

from __future__ import annotations


class ArtifactError(Exception):
    """Base class for every error raised by this package."""


class BadParameters(ArtifactError, ValueError):
    pass


class KindMismatch(ArtifactError, ValueError):
    pass


class RelationNotParallel(ArtifactError, ValueError):
    pass


class CyclicQuiver(ArtifactError, ValueError):
    pass


class VertexMapInvalid(ArtifactError, ValueError):
    pass


class AlgebraMismatch(ArtifactError, ValueError):
    pass


class FirstEntryOne(ArtifactError, ValueError):
    pass


class DecomposableSummand(ArtifactError, ValueError):
    pass


class NotChainMap(ArtifactError, ValueError):
    pass


class NotExceptional(ArtifactError, ValueError):
    pass


class BadIndices(ArtifactError, ValueError):
    pass


class NotTilting(ArtifactError):
    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


class ArcsIntersect(ArtifactError, ValueError):
    pass


class NotTame(ArtifactError, ValueError):
    pass


class NotDisjoint(ArtifactError, ValueError):
    pass


class NotComposable(ArtifactError, ValueError):
    pass


class RootFindingFailure(ArtifactError, ArithmeticError):
    pass


class UnknownTarget(ArtifactError, KeyError):
    pass
