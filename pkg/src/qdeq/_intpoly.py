"""Dense integer-polynomial kernel.

Polynomials are plain Python lists of ints, lowest degree first, with no
trailing zeros; [] is the zero polynomial.  This module is the speed
floor of the package: multiplication dispatches between schoolbook and
Kronecker substitution (one big-integer multiply per product), and gcd
dispatches between a primitive remainder sequence for small operands and
a small-prime modular algorithm (numpy inner loops, CRT lifting,
verification by exact division).

Nothing here knows about q, x or fractions; ratfunc builds the public
types on top.  Functions mutate nothing they receive except where noted.
"""

import math

import numpy as np


def trim(a):
    """Drop trailing zeros in place and return the list."""
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1  # -1 for the zero polynomial


def low(a):
    """Index of the lowest nonzero coefficient; a must be nonzero."""
    i = 0
    while a[i] == 0:
        i += 1
    return i


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def neg(a):
    return [-c for c in a]


def scal(a, k):
    if k == 0:
        return []
    return [c * k for c in a]


def shift(a, k):
    """Multiply by x**k, k >= 0."""
    if not a:
        return []
    return [0] * k + list(a)


def _school_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] += c * d
    return out


def _pack(a, nbytes):
    """Signed coefficients -> sum(a_i * 2**(8*nbytes*i))."""
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in a)
    val = int.from_bytes(pos, "little")
    if any(c < 0 for c in a):
        negb = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in a)
        val -= int.from_bytes(negb, "little")
    return val


def _kron_mul(a, b):
    """Kronecker substitution: pack, one big multiply, unpack balanced digits."""
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    blen = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    blen = (blen + 7) & ~7
    nbytes = blen >> 3
    n_out = len(a) + len(b) - 1
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    # every true digit d satisfies |d| < 2**(blen-1); adding that half-offset
    # to each digit makes them all land in [0, 2**blen) with no carries
    half = 1 << (blen - 1)
    prod += int.from_bytes(half.to_bytes(nbytes, "little") * n_out, "little")
    raw = prod.to_bytes(nbytes * n_out, "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n_out)
    ]
    return out


def mul(a, b):
    if not a or not b:
        return []
    if len(b) == 1:
        return scal(a, b[0])
    if len(a) == 1:
        return scal(b, a[0])
    la, lb = len(a), len(b)
    if la * lb <= 4096:
        return trim(_school_mul(a, b))
    nza = sum(1 for c in a if c)
    nzb = sum(1 for c in b if c)
    if nza * nzb * 16 <= la * lb:
        return trim(_school_mul(a, b))
    return trim(_kron_mul(a, b))


def content(a):
    """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def exact_scal_div(a, k):
    return [c // k for c in a]


def primitive_part(a):
    """a divided by its content, sign preserved; [] for zero."""
    if not a:
        return []
    c = content(a)
    if c == 1:
        return list(a)
    return [x // c for x in a]


def eval_at(a, v):
    """Horner evaluation; works for any ring element v (int, Fraction, complex)."""
    acc = 0
    for c in reversed(a):
        acc = acc * v + c
    return acc


def eval_mod(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def eval_many_mod(a, xs, p):
    """Horner at a vector of points; xs is a numpy int64 array with values in [0, p)."""
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in reversed(a):
        acc = (acc * xs + c % p) % p
    return acc


def divexact(a, b):
    """Quotient a/b over Z when b divides a exactly; ValueError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    oa, ob = low(a), low(b)
    if oa < ob:
        raise ValueError("not divisible")
    A = a[oa:]
    B = b[ob:]
    lq = len(A) - len(B) + 1
    if lq <= 0:
        raise ValueError("not divisible")
    b0 = B[0]
    r = list(A)
    out = [0] * lq
    # division from the low end: each step clears one coefficient exactly
    for k in range(lq):
        c = r[k]
        if c:
            q, rem = divmod(c, b0)
            if rem:
                raise ValueError("not divisible")
            out[k] = q
            for j in range(1, len(B)):
                if B[j]:
                    r[k + j] -= q * B[j]
    if any(r[lq:]):
        raise ValueError("not divisible")
    return shift(trim(out), oa - ob)


# ---------------------------------------------------------------------------
# gcd


def _pos(a):
    if a and a[-1] < 0:
        return [-c for c in a]
    return a


def _prs_gcd(a, b):
    """Primitive remainder sequence; fine for small operands only."""
    if deg(a) < deg(b):
        a, b = b, a
    while b:
        dv = deg(b)
        lv = b[-1]
        r = list(a)
        while r and deg(r) >= dv:
            dr = deg(r)
            lead = r[-1]
            r = [lv * c for c in r[:-1]]
            for i in range(dv):
                r[dr - dv + i] -= lead * b[i]
            trim(r)
        a, b = b, primitive_part(r)
    return primitive_part(a)


def _is_prime(n):
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 7, 61):  # deterministic below 3.2e9
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_31(skip=0):
    """Yield primes descending from just below 2**31, skipping the first few."""
    n = (1 << 31) - 1
    while n > (1 << 30):
        if _is_prime(n):
            if skip:
                skip -= 1
            else:
                yield n
        n -= 2
    raise RuntimeError("ran out of 31-bit primes")


def np_mod(a, p):
    """Reduce a coefficient list mod p into an ascending numpy int64 array."""
    return np.array([c % p for c in a], dtype=np.int64)


def np_polymod(u, v, p):
    """Remainder of u by v over GF(p); ascending numpy arrays, v[-1] != 0 mod p."""
    dv = len(v) - 1
    if dv == 0:
        return np.zeros(0, dtype=np.int64)
    inv = pow(int(v[-1]), p - 2, p)
    u = u.copy()
    for k in range(len(u) - 1, dv - 1, -1):
        c = int(u[k])
        if c:
            q = c * inv % p
            # q < p < 2**31 and |v| < 2**31, so products stay inside int64
            u[k - dv:k] = (u[k - dv:k] - q * v[:-1]) % p
            u[k] = 0
    head = u[:dv]
    nz = np.nonzero(head)[0]
    if len(nz) == 0:
        return np.zeros(0, dtype=np.int64)
    return head[: int(nz[-1]) + 1]


def np_gcd_monic(a, b, p):
    u, v = a, b
    while len(v):
        u, v = v, np_polymod(u, v, p)
    inv = pow(int(u[-1]), p - 2, p)
    return (u * inv) % p


def _sym(x, m):
    return x - m if x > m // 2 else x


def _divides(a, g, probe_prime):
    """Does g divide a over Z?  Cheap modular rejection, then exact division."""
    p = probe_prime
    if g[-1] % p and a[-1] % p:
        rem = np_polymod(np_mod(a, p), np_mod(g, p), p)
        if len(rem):
            return False
    try:
        divexact(a, g)
    except ValueError:
        return False
    return True


def _modular_gcd(a, b):
    """gcd of primitive a, b (both with nonzero constant term, deg >= 1)."""
    la, lb = a[-1], b[-1]
    lg = math.gcd(la, lb)
    best_deg = None
    M = 0
    C = None
    probe = None
    for p in primes_31():
        if la % p == 0 or lb % p == 0:
            continue
        if probe is None:
            probe = p
            continue
        gp = np_gcd_monic(np_mod(a, p), np_mod(b, p), p)
        d = len(gp) - 1
        if d == 0:
            return [1]  # coprime mod a good prime: certified coprime over Q
        scaled = [int(x) * (lg % p) % p for x in gp]
        if best_deg is None or d < best_deg:
            best_deg = d
            M = p
            C = [_sym(x, p) for x in scaled]
            continue
        if d > best_deg:
            continue  # bad prime
        # CRT-join C (mod M) with scaled (mod p), symmetric lift
        Mp = M * p
        inv = pow(M % p, p - 2, p)
        changed = False
        for i in range(len(C)):
            delta = (scaled[i] - C[i]) % p
            x = C[i] + M * (delta * inv % p)
            x = _sym(x % Mp, Mp)
            if x != C[i]:
                changed = True
            C[i] = x
        M = Mp
        if not changed:
            g = _pos(primitive_part(C))
            if _divides(a, g, probe) and _divides(b, g, probe):
                return g
    raise RuntimeError("modular gcd did not stabilize")


def gcd(a, b):
    """Primitive gcd over Z with positive leading coefficient.

    Integer content of the inputs is ignored: the result is the gcd of
    the primitive parts (times the common power of x).
    """
    if not a and not b:
        return []
    if not a:
        return _pos(primitive_part(b))
    if not b:
        return _pos(primitive_part(a))
    oa, ob = low(a), low(b)
    m = min(oa, ob)
    A = primitive_part(a[oa:])
    B = primitive_part(b[ob:])
    if len(A) == 1 or len(B) == 1:
        g = [1]
    elif max(len(A), len(B)) <= 24:
        g = _pos(_prs_gcd(A, B))
    else:
        g = _modular_gcd(A, B)
    return shift(g, m)
