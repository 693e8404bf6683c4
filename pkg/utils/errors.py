from utils.constants import ExitStatus


class LabError(Exception):
    exit_code = ExitStatus.DOMAIN_ERROR


class OutOfUnitInterval(LabError):
    pass


class UnsupportedKind(LabError):
    pass


class NegativeRadicand(LabError):
    pass


class NonDyadicIncrement(LabError):
    pass


class EmptyPrefix(LabError):
    pass


class HorizonTooShort(LabError):
    pass


class DyadicBoundary(LabError):
    pass


class SearchLimitExceeded(LabError):
    pass


class PerfectSquareInput(LabError):
    pass


class InvalidPerturbation(LabError):
    pass


class IoError(LabError):
    pass


class UsageError(LabError):
    exit_code = ExitStatus.USAGE_ERROR


class InvalidRequest(LabError):
    exit_code = ExitStatus.USAGE_ERROR

    def __init__(self, message: str, exit_code: int = ExitStatus.USAGE_ERROR):
        super().__init__(message)
        self.exit_code = exit_code


class InvariantViolation(LabError):
    exit_code = ExitStatus.INTERNAL_ERROR


class CutoffExceeded(InvariantViolation):
    pass


class TelescopingMismatch(InvariantViolation):
    pass
