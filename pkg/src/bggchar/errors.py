"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Unsupported root datum or invalid moduli."""


class WindowMismatchError(ValueError):
    """Two truncated characters live on windows that cannot be combined."""


class InsufficientDepthError(ValueError):
    """A product would need terms that were cut off by truncation."""


class CapExceededError(ValueError):
    """A requested computation is larger than the desk-scale safety cap."""


class MissingRestrictedWeight(LookupError):
    """A restricted-character table has no entry for a weight the recursion needs."""

    def __init__(self, weight, modulus):
        self.weight = tuple(weight)
        self.modulus = modulus
        super().__init__(f"no restricted character for {list(self.weight)} at modulus {modulus}")
