"""Exception types raised by the engine.

Every error carries the payload a caller needs to act on it (the violating
reflection, the surviving denominator factors, ...) so the CLI can report it
in structured form.
"""


class WeylsumError(ValueError):
    """Base class for all engine errors."""

    def payload(self):
        return {}


class UnsupportedRootSystem(WeylsumError):
    pass


class RankMismatch(WeylsumError):
    pass


class InvalidSubsystem(WeylsumError):
    pass


class NotInvariant(WeylsumError):
    def __init__(self, message, reflection=None):
        super().__init__(message)
        self.reflection = reflection

    def payload(self):
        if self.reflection is None:
            return {}
        return {"reflection": self.reflection.one_line()}


class NotPolynomial(WeylsumError):
    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = tuple(factors)

    def payload(self):
        return {"surviving_denominators": [str(f) for f in self.factors]}


class DegreeMismatch(WeylsumError):
    def __init__(self, message, expected=None, found=None):
        super().__init__(message)
        self.expected = expected
        self.found = found

    def payload(self):
        return {"expected": self.expected, "found": self.found}


class DenominatorVanishes(WeylsumError):
    def __init__(self, message, form=None):
        super().__init__(message)
        self.form = form

    def payload(self):
        return {"form": str(self.form)} if self.form is not None else {}


class ExprSyntaxError(WeylsumError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column

    def payload(self):
        return {"line": self.line, "column": self.column}


class SpaceMismatch(WeylsumError):
    pass
