"""Exception hierarchy shared by every layer of the prover."""


class GeoproveError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatch(GeoproveError, ValueError):
    """Two polynomials from different variable universes were combined."""


class ZeroPolynomial(GeoproveError, ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class MissingAssignment(GeoproveError, KeyError):
    def __init__(self, variable):
        super().__init__(variable)
        self.variable = variable

    def __str__(self):
        return f"no value assigned to variable {self.variable!r}"


class ZeroDivisorInList(GeoproveError, ValueError):
    """A divisor list passed to division contains the zero polynomial."""


class EmptyIdeal(GeoproveError, ValueError):
    """All generators handed to Buchberger's algorithm are zero."""


class BudgetExceeded(GeoproveError, RuntimeError):
    """A computation ran past its configured work budget."""


class InvalidSystem(GeoproveError, ValueError):
    pass


class UnprovedCertificate(GeoproveError, ValueError):
    pass


class UnverifiedCertificate(GeoproveError, ValueError):
    """A certificate failed its exact identity check."""


class UnsupportedStep(GeoproveError, ValueError):
    pass


class NotAFreeVariable(GeoproveError, ValueError):
    pass


class NotEnoughFreePoints(GeoproveError, ValueError):
    pass


class DegenerateSample(GeoproveError, ValueError):
    """A random placement of the free points made a construction step undefined."""


class IrrationalStep(GeoproveError, ValueError):
    pass


class ParseError(GeoproveError, ValueError):
    """Base class for diagnostics produced by the DSL and expression parsers.

    Every instance carries a 1-based ``line`` and ``column``.
    """

    def __init__(self, message, line=1, column=1):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class DSLSyntaxError(ParseError):
    def __init__(self, message, line=1, column=1, expected=()):
        super().__init__(message, line, column)
        self.expected = tuple(expected)


class UnknownReference(ParseError):
    def __init__(self, name, line=1, column=1):
        super().__init__(f"unknown reference {name!r}", line, column)
        self.name = name


class DuplicateName(ParseError):
    def __init__(self, name, line=1, column=1):
        super().__init__(f"name {name!r} is already defined", line, column)
        self.name = name


class MissingThesis(ParseError):
    pass


class UnknownVariable(ParseError):
    def __init__(self, name, line=1, column=1):
        super().__init__(f"unknown variable {name!r}", line, column)
        self.name = name
