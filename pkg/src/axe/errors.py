"""Exception hierarchy shared by every stage of the pipeline."""


class AxeError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(AxeError, ValueError):
    pass


class UnknownNode(AxeError, KeyError):
    pass


class NotAnElement(AxeError, ValueError):
    pass


class NotFound(AxeError, LookupError):
    pass


class InvalidXPath(AxeError, ValueError):
    pass


class UnresolvedXPath(AxeError, LookupError):
    pass


class BudgetTooSmall(AxeError, ValueError):
    pass


class MissingPlaceholder(AxeError, ValueError):
    pass


class Unparseable(AxeError, ValueError):
    """The model's raw response holds no recoverable JSON."""


class ClientError(AxeError, RuntimeError):
    """Transport failure talking to a model, after retries."""


class SchemaError(AxeError, ValueError):
    """The extraction schema is empty, nested, or otherwise malformed."""
