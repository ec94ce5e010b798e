"""Exception types raised across the package."""


class SiegelCongError(ValueError):
    """Base class; every error carries a short machine-readable code."""

    code = "ERROR"


class NotPrime(SiegelCongError):
    code = "NOT_PRIME"


class DenominatorDivisible(SiegelCongError):
    """A rational that should be p-integral has p in its denominator."""

    code = "DENOMINATOR_DIVISIBLE"

    def __init__(self, value, p, index=None):
        self.value = value
        self.p = p
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(f"{value} is not {p}-integral{where}")


class InvalidPair(SiegelCongError):
    code = "INVALID_PAIR"


class TrivialM1(SiegelCongError):
    code = "TRIVIAL_M1"


class PDividesConductor(SiegelCongError):
    code = "P_DIVIDES_CONDUCTOR"


class UnknownCheck(SiegelCongError):
    code = "UNKNOWN_CHECK"


class ConfigError(SiegelCongError):
    code = "CONFIG_ERROR"
