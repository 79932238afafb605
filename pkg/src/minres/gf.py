"""Finite-field arithmetic for the residue fields of local fields.

A residue field is either the prime field F_p or a tower extension built by
successive irreducible polynomials (one per unramified step of the local field
sitting above it).  Elements are immutable; all arithmetic is exact.

Polynomials over a residue field are plain lists of elements in ascending
degree order with no trailing zeros.  Factoring is squarefree decomposition +
distinct-degree + equal-degree splitting, which is ample at the field sizes
this package meets (q = p^f with p <= 65536 and f small).
"""

from __future__ import annotations

import random


class FFElt:
    """Element of a finite field; `data` is an int (prime field) or a tuple."""

    __slots__ = ("field", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = data

    def __add__(self, other):
        other = self.field.coerce(other)
        return FFElt(self.field, self.field._add(self.data, other.data))

    __radd__ = __add__

    def __neg__(self):
        return FFElt(self.field, self.field._neg(self.data))

    def __sub__(self, other):
        other = self.field.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        return FFElt(self.field, self.field._mul(self.data, other.data))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in finite field")
        return FFElt(self.field, self.field._inv(self.data))

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return not self.field._is_zero(self.data)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (
            isinstance(other, FFElt)
            and self.field is other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((id(self.field), self.data))

    def __repr__(self):
        return f"FF({self.data!r})"


class PrimeField:
    """F_p with int representatives in [0, p)."""

    def __init__(self, p: int):
        self.p = p
        self.size = p
        self.degree = 1  # over F_p

    def zero(self):
        return FFElt(self, 0)

    def one(self):
        return FFElt(self, 1)

    def from_int(self, n: int):
        return FFElt(self, n % self.p)

    def coerce(self, x):
        if isinstance(x, FFElt):
            if x.field is self:
                return x
            raise TypeError("element of another field")
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r}")

    def gen(self):
        return self.one()

    def elements(self):
        for n in range(self.p):
            yield FFElt(self, n)

    def frobenius_root(self, x: FFElt):
        # p-th root; in F_p every element is its own p-th root.
        return x

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField:
    """base[x]/(modulus) for a monic irreducible modulus over `base`.

    `modulus` is given in ascending order including the leading 1; elements
    are tuples of base-field data of length deg(modulus).
    """

    def __init__(self, base, modulus):
        if not modulus or not bool(modulus[-1] == base.one()):
            raise ValueError("modulus must be monic")
        self.base = base
        self.modulus = tuple(modulus)
        self.step_degree = len(modulus) - 1
        if self.step_degree < 2:
            raise ValueError("extension degree must be >= 2")
        self.p = base.p
        self.size = base.size ** self.step_degree
        self.degree = base.degree * self.step_degree

    def zero(self):
        return FFElt(self, tuple(self.base.zero().data for _ in range(self.step_degree)))

    def one(self):
        return self.from_base(self.base.one())

    def gen(self):
        data = [self.base.zero().data] * self.step_degree
        data[1] = self.base.one().data
        return FFElt(self, tuple(data))

    def from_base(self, x: FFElt):
        data = [self.base.zero().data] * self.step_degree
        data[0] = x.data
        return FFElt(self, tuple(data))

    def from_int(self, n: int):
        return self.from_base(self.base.from_int(n))

    def coerce(self, x):
        if isinstance(x, FFElt):
            if x.field is self:
                return x
            if x.field is self.base:
                return self.from_base(x)
            raise TypeError("element of another field")
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r}")

    def elements(self):
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for b in self.base.elements():
                    yield (b.data,) + rest

        for data in rec(self.step_degree):
            yield FFElt(self, data)

    def frobenius_root(self, x: FFElt):
        # p-th root via x^(q/p); q = p^degree over the prime field.
        return x ** (self.size // self.p)

    def _wrap(self, data):
        return FFElt(self, data)

    def _base_elts(self, data):
        return [FFElt(self.base, c) for c in data]

    def _add(self, a, b):
        return tuple(
            (FFElt(self.base, x) + FFElt(self.base, y)).data for x, y in zip(a, b)
        )

    def _neg(self, a):
        return tuple((-FFElt(self.base, x)).data for x in a)

    def _mul(self, a, b):
        n = self.step_degree
        prod = [self.base.zero() for _ in range(2 * n - 1)]
        ea = self._base_elts(a)
        eb = self._base_elts(b)
        for i, x in enumerate(ea):
            if not x:
                continue
            for j, y in enumerate(eb):
                prod[i + j] = prod[i + j] + x * y
        # reduce modulo the monic modulus
        mod = list(self.modulus)
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if not c:
                continue
            for i in range(len(mod) - 1):
                prod[k - self.step_degree + i] = prod[k - self.step_degree + i] - c * mod[i]
            prod[k] = self.base.zero()
        return tuple(x.data for x in prod[:n])

    def _inv(self, a):
        # extended Euclid in base[x] against the modulus
        f = list(self.modulus)
        g = self._base_elts(a)
        one = self.one()
        r0, r1 = list(f), poly_trim(g)
        s0, s1 = [], [self.base.one()]
        while r1:
            q, r = poly_divmod(r0, r1, self.base)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, self.base), self.base)
        # r0 = gcd (a nonzero constant since modulus is irreducible)
        c = r0[0].inverse()
        inv = [x * c for x in s0]
        data = [self.base.zero().data] * self.step_degree
        for i, x in enumerate(inv[: self.step_degree]):
            data[i] = x.data
        return tuple(data)

    def _is_zero(self, a):
        return all(not FFElt(self.base, c) for c in a)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


# ---------------------------------------------------------------------------
# dense polynomials over a finite field: list[FFElt], ascending, trimmed
# ---------------------------------------------------------------------------


def poly_trim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def poly_add(f, g, field):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else field.zero()
        b = g[i] if i < len(g) else field.zero()
        out.append(a + b)
    return poly_trim(out)


def poly_sub(f, g, field):
    return poly_add(f, [-c for c in g], field)


def poly_mul(f, g, field):
    if not f or not g:
        return []
    out = [field.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_divmod(f, g, field):
    f = poly_trim(f)
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [field.zero()] * max(0, len(f) - len(g) + 1)
    r = list(f)
    ginv = g[-1].inverse()
    while len(r) >= len(g) and poly_trim(r):
        r = poly_trim(r)
        if len(r) < len(g):
            break
        c = r[-1] * ginv
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = r[k + i] - c * b
        r = r[:-1]
    return poly_trim(q), poly_trim(r)


def poly_gcd(f, g, field):
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(f, g, field)[1]
    if f:
        c = f[-1].inverse()
        f = [x * c for x in f]
    return f


def poly_monic(f, field):
    f = poly_trim(f)
    if not f:
        return f
    c = f[-1].inverse()
    return [x * c for x in f]


def poly_pow_mod(f, n, mod, field):
    result = [field.one()]
    base = poly_divmod(f, mod, field)[1]
    while n:
        if n & 1:
            result = poly_divmod(poly_mul(result, base, field), mod, field)[1]
        base = poly_divmod(poly_mul(base, base, field), mod, field)[1]
        n >>= 1
    return result


def poly_deriv(f, field):
    return poly_trim([f[i] * field.from_int(i) for i in range(1, len(f))])


def poly_eval(f, x, field):
    acc = field.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_eq(f, g):
    return poly_trim(list(f)) == poly_trim(list(g))


def squarefree_decomposition(f, field):
    """Return [(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i squarefree monic."""
    f = poly_monic(f, field)
    out = []
    if len(f) <= 1:
        return out
    p = field.p
    fp = poly_deriv(f, field)
    if not fp:
        # f = h(x^p); take p-th root of coefficients and recurse
        h = [field.frobenius_root(f[i]) for i in range(0, len(f), p)]
        for g, m in squarefree_decomposition(h, field):
            out.append((g, m * p))
        return out
    w = poly_gcd(f, fp, field)
    v = poly_divmod(f, w, field)[0]  # product of squarefree part
    m = 1
    while len(v) > 1:
        u = poly_gcd(v, w, field)
        piece = poly_divmod(v, u, field)[0]
        if len(piece) > 1:
            out.append((poly_monic(piece, field), m))
        v = u
        w = poly_divmod(w, u, field)[0]
        m += 1
    if len(w) > 1:
        # leftover is a p-th power
        for g, k in squarefree_decomposition(w, field):
            merged = False
            for idx, (g2, m2) in enumerate(out):
                if poly_eq(g, g2):
                    out[idx] = (g2, m2 + k)
                    merged = True
            if not merged:
                out.append((g, k))
    return out


def distinct_degree(f, field):
    """Split squarefree monic f into [(product of irreducible factors of degree d, d)]."""
    out = []
    x = [field.zero(), field.one()]
    h = x
    f = poly_monic(f, field)
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            out.append((f, len(f) - 1))
            break
        h = poly_pow_mod(h, field.size, f, field)
        g = poly_gcd(poly_sub(h, x, field), f, field)
        if len(g) > 1:
            out.append((g, d))
            f = poly_divmod(f, g, field)[0]
            h = poly_divmod(h, f, field)[1]
    return out


def equal_degree(f, d, field, rng):
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = []
        for _ in range(n):
            # random element of the field
            e = field.zero()
            g = field.gen() if field.degree > 1 else field.one()
            for _ in range(field.degree):
                e = e * g + field.from_int(rng.randrange(field.p))
            a.append(e)
        a = poly_trim(a)
        if len(a) <= 0:
            continue
        if field.p == 2:
            # trace splitting: T(a) = a + a^2 + ... + a^(2^(d*degree-1))
            t = list(a)
            acc = list(a)
            for _ in range(d * field.degree - 1):
                acc = poly_pow_mod(acc, 2, f, field)
                t = poly_add(t, acc, field)
            g = poly_gcd(t, f, field)
        else:
            e = (field.size ** d - 1) // 2
            b = poly_pow_mod(a, e, f, field)
            g = poly_gcd(poly_sub(b, [field.one()], field), f, field)
        if 0 < len(g) - 1 < n:
            return equal_degree(g, d, field, rng) + equal_degree(
                poly_divmod(f, g, field)[0], d, field, rng
            )


def factor(f, field, seed: int = 0):
    """Full factorization: returns (leading coeff, [(monic irreducible, multiplicity)])."""
    rng = random.Random((seed << 16) ^ 0x5EED)
    f = poly_trim(f)
    if not f:
        raise ValueError("factor of zero polynomial")
    lc = f[-1]
    out = []
    # split off x^k
    k = 0
    while not f[0]:
        f = f[1:]
        k += 1
    if k:
        out.append(([field.zero(), field.one()], k))
    for g, m in squarefree_decomposition(f, field):
        for h, d in distinct_degree(g, field):
            for irr in equal_degree(h, d, field, rng):
                out.append((irr, m))
    return lc, out


def roots(f, field):
    """Roots of f in the field (no multiplicity), by factoring."""
    _, facs = factor(f, field)
    out = []
    for g, _ in facs:
        if len(g) == 2:
            out.append(-g[0])
    return out
