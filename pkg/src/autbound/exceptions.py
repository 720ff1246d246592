class GraphError(ValueError):
    """
    A graph could not be built, or is unsuitable for the requested operation.
    """


class GraphFormatError(GraphError):
    """
    Text could not be parsed as a graph.
    ``offset`` is the byte offset for graph6 input and the line number for edge lists.
    """

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f'{message} (at offset {offset})')
        self.offset = offset


class SizeLimitExceeded(GraphError):
    """
    An operation refused a graph with more vertices than it is prepared to handle.
    """

    def __init__(self, operation: str, n: int, limit: int) -> None:
        super().__init__(f'{operation} is limited to n <= {limit}, got n={n}')
        self.n = n
        self.limit = limit


class DisconnectedGraph(GraphError):
    """
    An operation that needs a connected host graph was given a disconnected one.
    """
