"""Exception types shared across the package.

Everything raised on bad input derives from :class:`ContactSurgeryError`
so callers (and the CLI) can catch domain errors in one place without
swallowing genuine bugs.
"""


class ContactSurgeryError(Exception):
    """Base class for all domain errors raised by this package."""


class NonNegativeCoefficient(ContactSurgeryError, ValueError):
    """A negative rational was required but r >= 0 or r = infinity."""


class NonPositiveCoefficient(ContactSurgeryError, ValueError):
    """A positive rational was required but r <= 0 or r = infinity."""


class InfiniteCoefficient(ContactSurgeryError, ValueError):
    """A finite coefficient was required."""


class DivisionByZero(ContactSurgeryError, ZeroDivisionError):
    """An inner tail of a continued fraction evaluated to zero."""


class BadEntry(ContactSurgeryError, ValueError):
    """A continued-fraction or chain entry violates its bound."""


class SingularMatrix(ContactSurgeryError, ValueError):
    """A unimodular matrix was required but |det| != 1."""


class IndexOutOfRange(ContactSurgeryError, ValueError):
    """A front event references a strand position that does not exist."""


class UnbalancedCusps(ContactSurgeryError, ValueError):
    """A front word ends with open strands (left/right cusps unbalanced)."""


class EmptyWord(ContactSurgeryError, ValueError):
    """A front word must contain at least one event."""


class UnrealizablePair(ContactSurgeryError, ValueError):
    """No Legendrian unknot front realizes the requested (tb, rot)."""


class SameComponent(ContactSurgeryError, ValueError):
    """Linking number requires two distinct components."""


class BadChoice(ContactSurgeryError, ValueError):
    """A rotation-number choice is outside the admissible set."""


class MissingLinkingData(ContactSurgeryError, ValueError):
    """A pairwise linking number needed by the linking matrix is absent."""


class ParseError(ContactSurgeryError, ValueError):
    """A diagram file or coefficient string could not be parsed."""
