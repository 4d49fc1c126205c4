"""Exception hierarchy.

``InputError`` subclasses are problems with what the caller handed in (the
CLI maps them to exit status 2); ``InvariantError`` subclasses mean the
library produced something inconsistent (exit status 3).
"""

from __future__ import annotations


class BendMinError(Exception):
    pass


class InputError(BendMinError):
    pass


class InvariantError(BendMinError):
    pass


class DuplicateEdge(InputError):
    pass


class SelfLoop(InputError):
    pass


class DegreeExceeded(InputError):
    pass


class DanglingIndex(InputError):
    pass


class NonPlanarRotation(InputError):
    pass


class NotPlanar(InputError):
    pass


class NotPlanarEmbedding(InputError):
    pass


class Disconnected(InputError):
    pass


class NotBiconnected(InputError):
    pass


class IsolatedVertex(InputError):
    pass


class EdgeNotFound(InputError):
    pass


class SmoothWouldCreateMultiEdge(InputError):
    pass


class NotSmoothable(InputError):
    pass


class TooLarge(InputError):
    pass


class PathNotInGraph(InputError):
    pass


class RootHasNoPertinent(InputError):
    pass


class NotEquivalent(InputError):
    pass


class InvalidRepresentation(InputError):
    pass


class NoRectangularDrawing(InputError):
    pass


class ConditionsViolated(InputError):
    pass


class OrientationUnresolvable(InvariantError):
    pass


class PathsDisagree(InvariantError):
    pass


class UnclassifiedShape(InvariantError):
    pass


class MalformedNode(InvariantError):
    pass


class MalformedPNode(MalformedNode):
    pass


class MalformedSNode(MalformedNode):
    pass


class MalformedRNode(MalformedNode):
    pass
