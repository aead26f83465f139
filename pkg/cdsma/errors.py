"""
Exception hierarchy shared by the library, the CLI and the HTTP API
"""


class SimulationError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(SimulationError, ValueError):
    """Caller supplied a topology, demand or parameter that cannot be used."""


class DisconnectedGraph(InputError):
    """Edge list does not form a single connected component."""

    def __init__(self, unreachable):
        self.unreachable = tuple(unreachable)
        preview = ', '.join(str(u) for u in self.unreachable[:5])
        more = '...' if len(self.unreachable) > 5 else ''
        super().__init__(f'graph is disconnected; unreachable from node 0: {preview}{more}')


class SelfLoop(InputError):
    """Edge list contains a (u, u) pair."""

    def __init__(self, node):
        self.node = node
        super().__init__(f'self-loop on node {node}')


class NodeIdOutOfRange(InputError):
    """Edge endpoint outside [0, node_count)."""

    def __init__(self, node, node_count):
        self.node = node
        self.node_count = node_count
        super().__init__(f'node id {node} outside [0, {node_count})')


class EmptyGraph(InputError):
    """No nodes to build a graph from."""

    def __init__(self, message='graph has no nodes'):
        super().__init__(message)


class ParseError(InputError):
    """Malformed line in an edge-list or demand file."""

    def __init__(self, path, line_number, message):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f'{self.path}:{line_number}: {message}')


class MissingNode(InputError):
    """Demand file lacks an entry for a node."""

    def __init__(self, node):
        self.node = node
        super().__init__(f'no demand given for node {node}')


class NegativeWeight(InputError):
    """Demand entry below zero."""

    def __init__(self, node, weight):
        self.node = node
        self.weight = weight
        super().__init__(f'negative demand {weight} for node {node}')


class InvalidDemand(InputError):
    """Demand vector is empty, all zero or not finite."""


class ClusterDoesNotFit(InputError):
    """Requested demand cluster ball is truncated by the topology border."""

    def __init__(self, head, radius, size, required):
        self.head = head
        self.radius = radius
        if head is None:
            message = f'no node has a complete radius-{radius} ball of {required} nodes'
        else:
            message = (f'cluster of radius {radius} around node {head} holds {size} nodes, '
                       f'a complete diamond of {required} required')
        super().__init__(message)


class InvalidParameter(InputError):
    """Numeric parameter outside its admissible range."""


class InvariantViolation(SimulationError):
    """A migration trace broke one of its convergence guarantees."""

    def __init__(self, violations, context=''):
        self.violations = list(violations)
        names = ', '.join(str(v) for v in self.violations)
        prefix = f'{context}: ' if context else ''
        super().__init__(f'{prefix}trace invariant violated ({names})')
