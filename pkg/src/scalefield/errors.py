"""Exception types shared across the package."""


class DomainError(ValueError):
    """A numeric argument lies outside the domain an operation accepts."""


class UsageError(ValueError):
    """Arguments are individually valid but do not fit together."""


class StructureMismatch(UsageError):
    """Two scaled values belong to different structures."""


class IntegrabilityError(ValueError):
    """A gauge field is not integrable, so point-to-point scale factors are path dependent."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or inconsistent."""
