"""Exception hierarchy shared across the package."""


class LatticeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LatticeError):
    """Malformed input file or malformed scalar literal."""


class InadmissiblePrefixError(LatticeError):
    """A zero Gram-Schmidt norm was met outside a declared hyperbolic pair."""


class IsotropicVectorError(LatticeError):
    """The absolute-value baseline hit an isotropic orthogonalized vector."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"isotropic GSO vector encountered at position {index + 1}")


class InternalInvariantError(LatticeError):
    """An internal consistency check failed; indicates an implementation bug."""
