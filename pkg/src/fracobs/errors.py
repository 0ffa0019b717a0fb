class FracObsError(Exception):
    pass


class InvalidArgumentError(FracObsError, ValueError):
    pass


class InvalidInstanceError(FracObsError, ValueError):
    pass


class NumericalFailureError(FracObsError, RuntimeError):
    pass


class ConfigError(FracObsError, ValueError):
    def __init__(self, field, message):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")
