"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class ResonanceError(Exception):
    exit_code = 3


class ConfigError(ResonanceError):
    exit_code = 2


class AsymmetricDomainError(ConfigError):
    pass


class TooFewPointsError(ConfigError):
    pass


class InvalidAngleError(ConfigError):
    pass


class PotentialNotEvaluableError(ResonanceError):
    pass


class EigensolverFailure(ResonanceError):
    pass


class DegenerateNormalizationError(ResonanceError):
    pass


class TrajectoryAmbiguityError(ResonanceError):
    pass


class GridMismatchError(ResonanceError):
    pass


class ZeroArgumentError(ResonanceError):
    pass


class ThetaTooSmallError(ResonanceError):
    pass


class StateNotDiscreteError(ResonanceError):
    pass


class StateNotBoundError(ResonanceError):
    pass


class PoleCountMismatchError(ResonanceError):
    pass
