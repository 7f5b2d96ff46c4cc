"""Exception hierarchy.

Engine faults derive from :class:`EngineError`; the CLI maps them to exit
code 1.  A disagreement between a derived value and a reference closed form
is *not* an exception, it is reported as a ``Mismatch`` verdict.
"""


class EngineError(Exception):
    pass


class DegenerateScalar(EngineError, ZeroDivisionError):
    """Division by the zero rational function."""


class PoleAtSample(EngineError, ZeroDivisionError):
    """A denominator vanishes at the requested parameter sample."""


class DegenerateParameters(EngineError, ValueError):
    """a0 * b0 == 0; the operator family is only defined for a0 b0 != 0."""


class NonInvertibleLeading(EngineError, ArithmeticError):
    pass


class SingularSymbol(EngineError, ArithmeticError):
    pass


class OddDenomPow(EngineError, ValueError):
    pass


class NonIntegrable(EngineError, ValueError):
    pass


class PatternBroken(EngineError, AssertionError):
    """A derived functional is not of the expected bracket shape."""


class UnknownTag(EngineError, KeyError):
    pass


class UnknownFunctional(EngineError, KeyError):
    pass
