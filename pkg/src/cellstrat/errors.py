"""Exception hierarchy shared by every cellstrat module."""


class CellstratError(Exception):
    """Base class for all library errors."""


class MalformedPartitionError(CellstratError, ValueError):
    """Blocks overlap, miss a dot, or reference an index outside the row."""


class DimensionError(CellstratError, ValueError):
    """Operands live in algebras (or groups) of different sizes."""


class SizeLimitError(CellstratError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class OracleTooLargeError(SizeLimitError):
    """The oracle module would be larger than the matrix cap."""


class SingularParameterError(CellstratError, ValueError):
    """A negative power of delta was requested at delta = 0."""


class UndefinedLayerError(CellstratError, ValueError):
    """The zero element has no layer."""


class NotInSubgroupError(CellstratError, ValueError):
    """A permutation is outside the stabilizer it was required to lie in."""


class NotYoungError(CellstratError):
    """The image of an intersection is not a full product of symmetric groups."""


class ParseError(CellstratError, ValueError):
    """Text input does not follow the diagram, partial-diagram or cycle grammar."""
