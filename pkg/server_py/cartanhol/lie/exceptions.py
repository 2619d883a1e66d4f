class CartanholError(Exception):
    """Base class for errors raised by the cartanhol apps."""


class InputError(CartanholError, ValueError):
    """Malformed data or inconsistent dimensions."""


class PreconditionError(CartanholError):
    """An operation was called on data that does not satisfy its precondition."""


class ConstructionError(CartanholError):
    """A constructed object failed its built-in self-checks."""


class UndefinedRatioError(CartanholError, ValueError):
    pass
