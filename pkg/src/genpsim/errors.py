"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Run configuration failed schema validation. CLI exit code 2."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured resource limit. CLI exit code 3."""


class NumericalInvariantError(RuntimeError):
    """A numerical invariant (imaginary residue, unitarity, trace drift)
    was violated beyond tolerance. CLI exit code 4."""
