"""Exception types shared across the package."""


class LipteichError(Exception):
    """Base class for all package-specific errors."""


class NotHyperbolic(LipteichError):
    """Matrix is not a hyperbolic isometry (|trace| <= 2)."""


class Degenerate(LipteichError):
    """Requested right-angled polygon does not exist for these side lengths."""


class CollarEmpty(LipteichError):
    """Core is too long to carry an equidistant collar of the given boundary length."""


class PantsCase(LipteichError):
    """Component is a pair of pants; the arc-to-curve replacement does not apply."""


class Unsupported(LipteichError):
    """Operation is only implemented for the once-punctured torus."""


class InvalidFN(LipteichError):
    """Fenchel-Nielsen data is invalid (non-positive length, wrong arity)."""


class InsufficientCandidates(LipteichError):
    """Candidate curve family is too small to complete a marking."""


class NotThin(LipteichError):
    """A curve expected to be short exceeds the thin-part threshold."""


class NotThick(LipteichError):
    """A point expected to be thick carries a short curve (advisory)."""


class MismatchedSpace(LipteichError):
    """Annulus points live in model spaces with different boundary lengths."""


class Overflow(LipteichError):
    """Requested parameters exceed double-precision log-space capacity."""


class ConfigError(LipteichError):
    """Experiment configuration is malformed or violates a constraint."""
