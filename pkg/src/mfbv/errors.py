"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so keep the split coarse:
bad mathematical input vs. a request that exceeds a configured bound.
"""


class DomainError(ValueError):
    """Input violates a mathematical precondition (gcd, range, sign)."""


class ResourceError(RuntimeError):
    """Request exceeds a configured size bound (sieve limit, enumeration cap)."""


class ConfigError(ValueError):
    """Malformed experiment configuration; carries a line-anchored message."""
