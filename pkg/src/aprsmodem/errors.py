"""Exception types raised across the modem pipeline."""


class ModemError(Exception):
    """Base class for every error raised by this package."""


# AX.25 framing

class FrameError(ModemError, ValueError):
    pass


class InvalidCallsign(FrameError):
    pass


class InvalidSsid(FrameError):
    pass


class TooManyDigipeaters(FrameError):
    pass


class InfoFieldSize(FrameError):
    pass


class BadFcs(FrameError):
    """Frame check sequence does not match the received bytes."""


class MalformedAddressBlock(FrameError):
    pass


class PacketSyntaxError(FrameError):
    """TNC2 monitor text could not be parsed."""


class NotUiFrame(UserWarning):
    """Issued (not raised) when a parsed frame's control byte is not 0x03."""


# bit layer

class StageError(ModemError, TypeError):
    """A bit-stream transform was applied to a stream at the wrong stage."""


class StuffingViolation(ModemError, ValueError):
    pass


# audio

class ConfigError(ModemError, ValueError):
    pass


class InsufficientSignal(ModemError, ValueError):
    pass


class UnsupportedFormat(ModemError, ValueError):
    pass


class CorruptHeader(ModemError, ValueError):
    pass
