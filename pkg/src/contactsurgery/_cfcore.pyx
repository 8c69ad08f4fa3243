# cython: language_level=3
"""Compiled kernels for continued fractions and 2x2 chain products.

Same contracts as ``_cfcore_py``.  All arithmetic is checked against
the int64 range; on any risk of wrap-around an OverflowError is raised
and the caller re-runs the pure big-integer twin, so results are always
exact.
"""

cdef long long LIMIT = (<long long>1) << 62


cdef inline long long _abs(long long v):
    return -v if v < 0 else v


cdef inline long long cmul(long long a, long long b) except? -1:
    if a != 0 and _abs(b) > LIMIT // _abs(a):
        raise OverflowError("int64 kernel range exceeded")
    return a * b


cdef inline long long csub(long long a, long long b) except? -1:
    cdef long long r = a - b
    if _abs(r) > LIMIT:
        raise OverflowError("int64 kernel range exceeded")
    return r


def neg_cf_expand(long long p, long long q):
    """Expand p/q < 0 (q > 0, reduced) with negative remainders."""
    cdef long long a, rem, t
    entries = []
    while True:
        a = p // q
        entries.append(a)
        rem = p - a * q
        if rem == 0:
            return entries
        t = -q
        q = rem
        p = t


def cf_eval(entries):
    """Evaluate a1 - 1/(a2 - 1/(... - 1/an)) as a reduced pair (p, q), q > 0."""
    cdef long long num, den, a, t
    cdef Py_ssize_t i, n = len(entries)
    num = entries[n - 1]
    den = 1
    for i in range(n - 2, -1, -1):
        if num == 0:
            raise ZeroDivisionError("inner continued-fraction tail is zero")
        a = entries[i]
        t = csub(cmul(a, num), den)
        den = num
        num = t
    if den < 0:
        num = -num
        den = -den
    return num, den


def chain_product(rs):
    """Product (1 1; 0 1) * prod_i (-ri 1; -1 0) as entries (a, b, c, d)."""
    cdef long long a = 1, b = 1, c = 0, d = 1
    cdef long long r, ta, tc
    for r in rs:
        ta = csub(cmul(-r, a), b)
        tc = csub(cmul(-r, c), d)
        b = a
        d = c
        a = ta
        c = tc
    return a, b, c, d


def boundary_solve(rs):
    """Solve prod_i (-ri 1; -1 0) * (x, y)^T = (-1, 1)^T for integers (x, y)."""
    cdef long long a = 1, b = 0, c = 0, d = 1
    cdef long long r, ta, tc
    for r in rs:
        ta = csub(cmul(-r, a), b)
        tc = csub(cmul(-r, c), d)
        b = a
        d = c
        a = ta
        c = tc
    return -d - b, c + a
