"""Exception hierarchy shared by every module in the package."""


class SpanrootError(Exception):
    """Base class for all errors raised by spanroot."""


class GraphError(SpanrootError, ValueError):
    """The input does not describe a valid rooted weighted graph."""


class EdgeIntoRoot(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class NonFiniteWeight(GraphError):
    pass


class NodeOutOfRange(GraphError):
    pass


class UnknownEdgeId(SpanrootError, KeyError):
    pass


class RootHasNoIncoming(SpanrootError, ValueError):
    pass


class NoIncomingEdge(SpanrootError):
    """Some non-root node has no incoming edge at all."""

    def __init__(self, node):
        super().__init__(f"node {node} has no incoming edge")
        self.node = node


class NodeNotInCycle(SpanrootError, ValueError):
    pass


class NotACycle(SpanrootError, ValueError):
    pass


class NoEnterEdge(SpanrootError, ValueError):
    pass


class MultipleEnterEdges(SpanrootError, ValueError):
    pass


class NotARootEdge(SpanrootError, ValueError):
    pass


class DecodeError(SpanrootError):
    """No tree of the requested kind exists for the graph."""


class NoArborescence(DecodeError):
    """Some node cannot be reached from the root."""


class NoDependencyTree(DecodeError):
    """Every spanning tree of the graph needs two or more root edges."""


class NoFeasibleRemoval(NoDependencyTree):
    """Removing any surplus root edge would leave its target without a head."""


class TooLarge(SpanrootError, ValueError):
    pass


class EmptyCorpus(SpanrootError, ValueError):
    pass


class LengthMismatch(SpanrootError, ValueError):
    pass


class ZeroBaseline(SpanrootError, ZeroDivisionError):
    pass


class ParseError(SpanrootError, ValueError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
