"""Exception hierarchy shared by every module."""


class CZLabError(ValueError):
    pass


class InvalidCubeError(CZLabError):
    pass


class DomainError(CZLabError):
    pass


class ShapeError(CZLabError):
    pass


class InsufficientDataError(CZLabError):
    pass


class ConfigError(CZLabError):
    pass
