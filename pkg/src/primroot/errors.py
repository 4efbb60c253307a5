"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NotInvertibleError(DomainError):
    """The element has no inverse for the given modulus (gcd != 1)."""


class ContractError(Exception):
    """A documented precondition was violated by the caller."""


class ResourceLimitError(Exception):
    """The request exceeds a configured memory or table budget."""
