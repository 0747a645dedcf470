"""Exception hierarchy shared by the graph, centrality and harness modules."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for every error raised by this package."""


class UnknownNode(GraphError):
    def __init__(self, node):
        super().__init__(f"unknown node {node!r}")
        self.node = node


class NotInClass(GraphError):
    """Some node cannot reach the target."""

    def __init__(self, node, target):
        super().__init__(f"node {node!r} cannot reach target {target!r}")
        self.node = node
        self.target = target


class TargetMismatch(GraphError):
    pass


class InvalidMerge(GraphError):
    pass


class RedirectTarget(GraphError):
    pass


class MissingEdge(GraphError):
    def __init__(self, edge):
        super().__init__(f"edge {edge!r} not present")
        self.edge = edge


class SwapFromTarget(GraphError):
    pass


class InvalidDecay(GraphError):
    pass


class SingularSystem(GraphError):
    pass


class PreconditionUnsatisfiable(GraphError):
    """The instance does not meet an axiom's or lemma's hypotheses."""


class BudgetExceeded(GraphError):
    pass


class ParseError(GraphError):
    """Malformed graph file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class GraphSyntaxError(ParseError):
    pass


class DuplicateTarget(ParseError):
    pass


class MissingTarget(ParseError):
    pass


class NegativeWeight(ParseError):
    pass


class ZeroMultiplicity(ParseError):
    pass


class NotInClassAtLine(NotInClass, ParseError):
    """A parsed file describes a graph in which ``node`` cannot reach the target."""

    def __init__(self, node, target, line=None):
        NotInClass.__init__(self, node, target)
        self.line = line
        if line is not None:
            self.args = (f"line {line}: {self.args[0]}",)
