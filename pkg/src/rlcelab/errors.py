"""Exception hierarchy shared by every module of the package."""


class RlceLabError(Exception):
    """Base class for all errors raised by rlcelab."""


# field arithmetic
class ReduciblePolynomial(RlceLabError, ValueError):
    pass


class DegreeMismatch(RlceLabError, ValueError):
    pass


class ContextMismatch(RlceLabError, ValueError):
    pass


class DivisionByZero(RlceLabError, ZeroDivisionError):
    pass


# linear algebra and codes
class NoSolution(RlceLabError, ValueError):
    pass


class UnknownPosition(RlceLabError, KeyError):
    pass


class LengthMismatch(RlceLabError, ValueError):
    pass


# GRS codes
class InvalidSupport(RlceLabError, ValueError):
    pass


class ZeroMultiplier(RlceLabError, ValueError):
    pass


class DegreeTooLarge(RlceLabError, ValueError):
    pass


class Inconsistent(RlceLabError, ValueError):
    """Values do not lie on any codeword of the GRS code."""


class DecodeFailure(RlceLabError):
    pass


# scheme
class InvalidParams(RlceLabError, ValueError):
    pass


class DecryptFailure(RlceLabError):
    pass


class KeyFileError(RlceLabError, ValueError):
    """Malformed, mismatched or unsupported key/ciphertext document."""


# distinguisher / attack
class NotDistinguishable(RlceLabError):
    """The shortening interval is empty for these parameters."""


class IntervalViolation(RlceLabError, ValueError):
    pass


class NotExposed(RlceLabError, ValueError):
    """Position is not in the exposed twin set of the shortened code."""


class AmbiguousTwin(RlceLabError):
    def __init__(self, position, candidates):
        self.position = position
        self.candidates = tuple(sorted(candidates))
        super().__init__(f"position {position}: {len(self.candidates)} twin candidates {self.candidates}")


class BudgetExceeded(RlceLabError):
    pass


class NotGRS(RlceLabError):
    pass


class DegeneratePair(RlceLabError):
    pass


class PointAtInfinity(DegeneratePair):
    """The pair's evaluation point is the pole of the current support parameterization."""


class InconsistentPair(RlceLabError):
    pass


class RepairFailed(RlceLabError):
    pass


class AttackFailed(RlceLabError):
    pass
