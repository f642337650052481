class CxSynthError(Exception):
    """Base class for every domain error raised by the package."""

    status = 400
    exit_code = 1

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.message = message
        self.detail = detail


class LabelError(CxSynthError):
    pass


class TrackingModeError(CxSynthError):
    pass


class QubitRangeError(CxSynthError):
    pass


class OverlapCollision(CxSynthError):
    """Two gates meet on one qubit in the same moment, or out of order."""

    status = 500

    def __init__(self, message, moment=None, qubit=None):
        super().__init__(message, detail=[f"moment={moment}", f"qubit={qubit}"])
        self.moment = moment
        self.qubit = qubit


class SpecError(CxSynthError):
    pass


class HgpError(CxSynthError):
    pass


class UnsupportedError(CxSynthError):
    status = 422


class CompressionError(CxSynthError):
    pass


class NoClosedFormError(CxSynthError):
    status = 404


class OracleCapError(CxSynthError):
    status = 413


class NoiseParamError(CxSynthError):
    pass


class CertificationError(CxSynthError):
    status = 500
    exit_code = 2
