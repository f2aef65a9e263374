"""Exception types shared across the package."""


class RobocropError(Exception):
    """Base class for all errors raised by robocrop."""


class OutOfBoundsError(RobocropError):
    """A rectangle extends outside the image or bounds it indexes."""


class EmptyBoxError(RobocropError):
    """A rectangle has zero or negative area."""


class InvalidTargetError(RobocropError):
    """A resize target dimension is smaller than one pixel."""


class InvalidZoomError(RobocropError):
    """A zoom factor lies outside the configured range."""


class PatchTooLargeError(RobocropError):
    """A requested patch exceeds the source dimensions."""


class BoxLargerThanBoundsError(RobocropError):
    """A box cannot fit inside the given bounds at any position."""


class ParseError(RobocropError):
    """An annotation, hierarchy, or manifest input is malformed."""


class CycleError(RobocropError):
    """A class hierarchy contains a cycle."""


class ConfigError(RobocropError):
    """An augmentation config violates its invariants."""


class MissingSourceError(RobocropError):
    """A manifest entry references an image that no longer exists."""


class NoInputsError(RobocropError):
    """A directory expected to contain images is empty."""
