"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class InvariantError(DomainError):
    """A constructed object violates one of its structural invariants."""


class ParamError(DomainError):
    """Bound parameters violate the hypotheses of the requested inequality."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("hypotheses violated: " + "; ".join(self.violations))


class OracleBoundError(DomainError):
    """A brute-force oracle refused to scan past its configured bound."""


class ZeroValueError(DomainError):
    """A polynomial value inside a summation interval is zero, where the
    summand is undefined."""
