"""Exception hierarchy shared across the toolkit."""


class JellyTopoError(Exception):
    """Base class for all toolkit errors."""


# -- graph construction -------------------------------------------------


class GraphError(JellyTopoError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NodeOutOfRange(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class NoEdges(GraphError):
    pass


# -- decomposition / profiling ------------------------------------------


class InvalidDecomposition(JellyTopoError):
    pass


class DegenerateInput(JellyTopoError):
    """A fit was requested on data that cannot determine the parameter."""


# -- generation ----------------------------------------------------------


class InfeasibleProfile(JellyTopoError):
    """Profile or target size cannot be realized at all."""


class InfeasibleQuota(JellyTopoError):
    """A single placement phase's edge target exceeds what its bounds allow."""


class RetryExhausted(JellyTopoError):
    """An edge draw ran out of retries and no repair was possible."""


# -- persistence ----------------------------------------------------------


class ParseError(JellyTopoError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ConflictingRelationship(JellyTopoError):
    """The same AS pair appears with two different relationship codes."""


class SchemaVersionMismatch(JellyTopoError):
    pass


# -- command line ----------------------------------------------------------


class UsageError(JellyTopoError):
    pass
