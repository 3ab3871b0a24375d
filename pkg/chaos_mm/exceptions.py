class ChaosMMError(Exception):
    """Base error. `exit_code` is what the command line returns when it escapes."""

    exit_code: int = 3

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail: str = detail


class ConfigError(ChaosMMError):
    exit_code = 2


class SingularityError(ChaosMMError):
    """The price reached x = 0, where inventory v = u/x is undefined."""


class BlowUpError(ChaosMMError):
    pass


class SamplingExhaustedError(ChaosMMError):
    pass


class NoPeakError(ChaosMMError):
    pass


class AveragingMismatchError(ChaosMMError):
    pass


class EmptySeriesError(ChaosMMError):
    pass
