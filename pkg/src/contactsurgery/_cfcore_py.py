"""Pure-Python kernels for continued fractions and 2x2 chain products.

Mirror of the compiled module ``_cfcore``; same functions, same
contracts, arbitrary-precision integers.  Inputs are assumed valid
(callers in :mod:`contactsurgery.exact` check domains and translate
errors); the only exception raised here is :class:`ZeroDivisionError`
from an inner continued-fraction tail.
"""


def neg_cf_expand(p, q):
    """Expand p/q < 0 (q > 0, reduced) with negative remainders.

    Returns entries [a1, ..., an] with a1 <= -1 and ai <= -2 for i >= 2
    such that p/q = a1 - 1/(a2 - 1/(... - 1/an)).
    """
    entries = []
    while True:
        a = p // q
        entries.append(a)
        rem = p - a * q
        if rem == 0:
            return entries
        # next value is -q/rem; remainder denominators strictly decrease
        p, q = -q, rem


def cf_eval(entries):
    """Evaluate a1 - 1/(a2 - 1/(... - 1/an)) exactly as a pair (p, q), q > 0."""
    num, den = entries[-1], 1
    for a in reversed(entries[:-1]):
        if num == 0:
            raise ZeroDivisionError("inner continued-fraction tail is zero")
        # a - den/num; stays reduced since gcd(a*num - den, num) = gcd(den, num)
        num, den = a * num - den, num
    if den < 0:
        num, den = -num, -den
    return num, den


def chain_product(rs):
    """Product (1 1; 0 1) * prod_i (-ri 1; -1 0) as entries (a, b, c, d)."""
    a, b, c, d = 1, 1, 0, 1
    for r in rs:
        a, b = -r * a - b, a
        c, d = -r * c - d, c
    return a, b, c, d


def boundary_solve(rs):
    """Solve prod_i (-ri 1; -1 0) * (x, y)^T = (-1, 1)^T for integers (x, y)."""
    a, b, c, d = 1, 0, 0, 1
    for r in rs:
        a, b = -r * a - b, a
        c, d = -r * c - d, c
    # each factor has det 1, so invert by the adjugate
    return -d - b, c + a
