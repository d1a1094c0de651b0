class Error(Exception):
    pass


class MatchingError(Error):
    pass


class DiagramError(Error):
    pass


class BoundaryError(Error):
    pass


class FrameError(Error):
    pass


class SignatureError(Error):
    pass


class ShapeError(Error):
    pass


class BurnsideError(Error):
    pass


class SignOracleError(Error, KeyError):
    pass


class WeightError(Error):
    pass


class QGroupError(Error):
    pass


class UnknownRelationError(Error, KeyError):
    pass


class ChainFormatError(Error):
    pass
