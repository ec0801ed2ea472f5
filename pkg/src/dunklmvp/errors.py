"""Exception types."""


class DunklError(ValueError):
    """Invalid input or violated precondition."""


class PolynomialSyntaxError(DunklError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConfigError(DunklError):
    pass


class SingularityError(DunklError):
    """Evaluation point too close to a reflecting hyperplane."""


class GeometryError(DunklError):
    pass


class QuadratureError(RuntimeError):
    def __init__(self, message: str, achieved: float | None = None):
        if achieved is not None:
            message = f"{message} (achieved error estimate {achieved:.3g})"
        super().__init__(message)
        self.achieved = achieved
