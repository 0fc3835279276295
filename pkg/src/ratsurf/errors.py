"""Exception hierarchy shared by every module.

Each class carries a short ``code`` used by the command-line front end to
build machine-readable error objects.
"""


class RatSurfError(Exception):
    code = "Error"


# exact field
class ZeroDenominator(RatSurfError, ZeroDivisionError):
    code = "ZeroDenominator"


class DivisionByZero(RatSurfError, ZeroDivisionError):
    code = "DivisionByZero"


class NegativeRadicand(RatSurfError, ValueError):
    code = "NegativeRadicand"


class RadicandTooLarge(RatSurfError, ValueError):
    code = "RadicandTooLarge"


class ContextMismatch(RatSurfError, ValueError):
    code = "ContextMismatch"


class NestedRadical(RatSurfError, ValueError):
    code = "NestedRadical"


class SignRefinementExhausted(RatSurfError, RuntimeError):
    code = "SignRefinementExhausted"


# geometry and maps
class PointNotOnSurface(RatSurfError, ValueError):
    code = "PointNotOnSurface"


class Indeterminate(RatSurfError, ValueError):
    code = "Indeterminate"


class DenominatorZero(RatSurfError, ZeroDivisionError):
    code = "DenominatorZero"


class SurfaceMismatch(RatSurfError, ValueError):
    code = "SurfaceMismatch"


class NotUnimodular(RatSurfError, ValueError):
    code = "NotUnimodular"


class UnknownName(RatSurfError, KeyError):
    code = "UnknownName"

    def __str__(self):
        return Exception.__str__(self)


class GrammarError(RatSurfError, ValueError):
    code = "GrammarError"


# twisting maps
class DuplicateNodes(RatSurfError, ValueError):
    code = "DuplicateNodes"


class TargetNotOnCircle(RatSurfError, ValueError):
    code = "TargetNotOnCircle"


class DuplicateInput(RatSurfError, ValueError):
    code = "DuplicateInput"


class SearchExhausted(RatSurfError, RuntimeError):
    code = "SearchExhausted"


class InvalidEps(RatSurfError, ValueError):
    code = "InvalidEps"


class ToleranceUnreachable(RatSurfError, RuntimeError):
    code = "ToleranceUnreachable"


# regulous functions
class PencilTooSmall(RatSurfError, ValueError):
    code = "PencilTooSmall"
