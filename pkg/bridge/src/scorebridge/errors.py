"""Exception types raised by the bridge."""


class BridgeError(Exception):
    """Base class for everything this package raises on purpose."""


class JobError(BridgeError):
    """The job description is unusable (missing inputs, no checkpoints)."""


class FormatError(BridgeError):
    """An input or output file violates the exchange format."""
