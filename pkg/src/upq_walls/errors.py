"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class UpqWallsError(Exception):
    code = "error"
    exit_code = 1


class RankError(UpqWallsError):
    code = "RankError"


class DegreeError(UpqWallsError):
    code = "DegreeError"


class CurveError(UpqWallsError):
    code = "CurveError"


class OutOfRange(UpqWallsError):
    code = "OutOfRange"


class WindowUnbounded(UpqWallsError):
    code = "WindowUnbounded"


class WindowRequired(UpqWallsError):
    code = "WindowRequired"


class HypothesisError(UpqWallsError):
    code = "HypothesisError"


class DegLNonpositive(UpqWallsError):
    code = "DegLNonpositive"


class RadiusTooSmall(UpqWallsError):
    code = "RadiusTooSmall"


class ConsistencyError(UpqWallsError):
    """Engine and oracle disagree. Always a bug, never bad input."""

    code = "ConsistencyError"
    exit_code = 2
