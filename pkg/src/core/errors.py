"""
Exception hierarchy shared by the analytic engine, the simulator and the CLI
"""


class RoadSignalError(Exception):
    """Base class for every error raised by roadsignal"""


class ValidationError(RoadSignalError):
    """One or more invalid inputs; `errors` keeps every collected message"""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class DomainError(RoadSignalError, ValueError):
    """Argument outside the domain of a formula"""


class IntegrationError(RoadSignalError):
    """Integrand produced a non-finite value"""

    def __init__(self, abscissa, message=None):
        self.abscissa = abscissa
        super().__init__(message or f"non-finite integrand value at x={abscissa!r}")


class NonConvergenceError(RoadSignalError):
    """Improper integral did not settle before its radius cap"""

    def __init__(self, last, previous, operation="integrate_improper"):
        self.last = last
        self.previous = previous
        self.operation = operation
        super().__init__(
            f"{operation} did not converge: last estimate {last!r}, previous {previous!r}"
        )


class DegenerateParameterError(RoadSignalError):
    """Parameters make a quantity independent of the random geometry"""


class UndefinedConditionalError(RoadSignalError):
    """Conditioning on an event of probability zero"""


class EmptyWindowError(RoadSignalError):
    """A sampled realization contains no base station"""
