"""Exception types raised by the library."""


class PhotonGateError(ValueError):
    """Base class for input validation failures."""


class ShapeError(PhotonGateError):
    pass


class NotUnitaryError(PhotonGateError):
    pass


class NotHermitianError(PhotonGateError):
    pass


class InvalidDensityMatrix(PhotonGateError):
    pass


class InvalidProbabilities(PhotonGateError):
    pass


class UnknownGateError(PhotonGateError, KeyError):
    pass


class SettingsUnavailable(PhotonGateError):
    """No published optical settings exist for the requested gate."""
