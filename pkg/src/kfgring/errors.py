"""Exception types shared across the solver and verification layers."""


class DomainError(ValueError):
    """Input lies outside the mathematical or physical domain of an operation."""


class RingTooStrongError(DomainError):
    """Ring strengths make u^2 negative, so no real angular solution exists."""


class InadmissibleStateError(DomainError):
    """An admissible bound state was required but a rejected root was given."""
