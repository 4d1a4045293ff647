"""Position-dependent scaling of number values by a real gauge field.

Submodules:

- ``scaled_algebra``: scaled complex structures and the maps between them
- ``gauge_paths``: gauge fields, link and path scale factors, integrability
- ``quantum_scaling``: wave packets, scaled expectations and operators
- ``gauge_covariant``: covariant derivatives and U(1) gauge checks
- ``experiment_cli``: command-line experiments with CSV output
"""

from .errors import ConfigError, DomainError, IntegrabilityError, StructureMismatch, UsageError

__version__ = "0.1.0"

__all__ = ["ConfigError", "DomainError", "IntegrabilityError", "StructureMismatch", "UsageError"]
