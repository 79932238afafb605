"""Exact valuations and arithmetic in Q_p and finite extension towers.

Valuations are exact rationals extended with +infinity (`ValQ`); they are the
one currency the whole package trades in, so they never round.  Field elements
live in explicit towers over Q_p built from two kinds of steps:

* unramified -- monic polynomial with integral coefficients whose reduction is
  irreducible over the current residue field; extends the residue field, value
  group unchanged.
* ramified -- monic polynomial whose Newton polygon is a single segment with
  slope denominator equal to the degree (generalized Eisenstein); extends the
  value group, residue field unchanged.  Classic Eisenstein polynomials are
  the slope -1/e case.

Element coordinates are exact rationals in a nested representation (one tuple
level per step), so the valuation of any representation is computed exactly:
on a ramified level the terms c_i * gen^i have pairwise distinct valuations
modulo the lower value group, and on an unramified level the generator powers
reduce to a residue-field basis.  Only *approximation quality* is inexact:
each element carries `prec`, the valuation below which it is guaranteed to
agree with the value it stands for.  Exact constructions carry infinite prec.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import gf as rf


class PrecisionLoss(Exception):
    """Signal: a quantity is indistinguishable from 0 at the working precision.

    Carries the known lower bound; drivers react by escalating precision.
    """

    def __init__(self, bound):
        self.bound = bound
        super().__init__(f"valuation >= {bound} at current precision")


class ExtensionCapError(Exception):
    """An extension tower would exceed the configured degree cap."""


# ---------------------------------------------------------------------------
# ValQ
# ---------------------------------------------------------------------------


class ValQ:
    """An exact rational valuation value, or +infinity (for zero elements).

    +infinity absorbs addition and wins every min; comparisons are exact.
    """

    __slots__ = ("q",)

    def __init__(self, value=None):
        if value is None:
            self.q = None  # +infinity
        elif isinstance(value, Fraction):
            self.q = value
        elif isinstance(value, ValQ):
            self.q = value.q
        else:
            self.q = Fraction(value)

    @property
    def is_infinite(self) -> bool:
        return self.q is None

    @property
    def finite(self) -> Fraction:
        if self.q is None:
            raise ValueError("valuation is +infinity")
        return self.q

    def __add__(self, other):
        other = _as_valq(other)
        if self.q is None or other.q is None:
            return INF
        return ValQ(self.q + other.q)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_valq(other)
        if other.q is None:
            raise ValueError("cannot subtract +infinity")
        if self.q is None:
            return INF
        return ValQ(self.q - other.q)

    def __rsub__(self, other):
        return _as_valq(other) - self

    def __mul__(self, other):
        # scalar multiple by an exact rational (2d factors and the like)
        if isinstance(other, ValQ):
            raise TypeError("valuations multiply only by scalars")
        if self.q is None:
            if other == 0:
                raise ValueError("0 * infinity")
            return INF
        return ValQ(self.q * Fraction(other))

    __rmul__ = __mul__

    def __neg__(self):
        if self.q is None:
            raise ValueError("cannot negate +infinity")
        return ValQ(-self.q)

    def __lt__(self, other):
        other = _as_valq(other)
        if self.q is None:
            return False
        if other.q is None:
            return True
        return self.q < other.q

    def __le__(self, other):
        other = _as_valq(other)
        return self < other or self.q == other.q

    def __gt__(self, other):
        return _as_valq(other) < self

    def __ge__(self, other):
        return _as_valq(other) <= self

    def __eq__(self, other):
        try:
            other = _as_valq(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __repr__(self):
        return "+inf" if self.q is None else f"{self.q}"


INF = ValQ()


def _as_valq(x) -> ValQ:
    if isinstance(x, ValQ):
        return x
    return ValQ(x)


def vmin(*vals) -> ValQ:
    out = INF
    for v in vals:
        v = _as_valq(v)
        if v < out:
            out = v
    return out


def ordp(r, p: int) -> ValQ:
    """Exponent of the prime p in the exact rational r; +infinity for r = 0."""
    if isinstance(r, int):
        n, d = r, 1
    elif isinstance(r, Fraction):
        n, d = r.numerator, r.denominator
    else:
        r = Fraction(r)
        n, d = r.numerator, r.denominator
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return ValQ(v)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

UNRAMIFIED = "unramified"
RAMIFIED = "ramified"


@dataclass(frozen=True)
class Step:
    """One extension step: kind, monic minimal polynomial over the level below
    (ascending coefficient data, leading 1 included), degree, and the exact
    valuation of the generator (0 for unramified steps)."""

    kind: str
    minpoly: tuple
    degree: int
    gen_val: Fraction


class LocalField:
    """A tower of extensions of Q_p with exact coordinate arithmetic.

    Immutable; `adjoin_*` return new fields whose steps extend this one's, so
    elements of the smaller field lift coordinate-wise via `lift_to`.
    """

    def __init__(self, p: int, steps=(), cap=None, degree_cap=None, _parent=None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.steps = tuple(steps)
        self.cap = None if cap is None else Fraction(cap)
        self.degree_cap = degree_cap
        self.e = 1
        self.f = 1
        for s in self.steps:
            if s.kind == UNRAMIFIED:
                self.f *= s.degree
            else:
                self.e *= s.degree
        self.degree = self.e * self.f
        self._parent = _parent
        self._residue_field = None
        self._uniformizer = None

    # -- structure -----------------------------------------------------------

    def subfield(self, k: int) -> "LocalField":
        """The tower truncated to its first k steps (identity-stable when the
        tower was built by adjoin chains)."""
        if k == len(self.steps):
            return self
        if self._parent is not None and k <= len(self._parent.steps):
            return self._parent.subfield(k)
        return LocalField(self.p, self.steps[:k], self.cap, self.degree_cap)

    @property
    def residue_field(self):
        if self._residue_field is None:
            if not self.steps:
                self._residue_field = rf.PrimeField(self.p)
            else:
                sub = self.subfield(len(self.steps) - 1)
                top = self.steps[-1]
                if top.kind == RAMIFIED:
                    self._residue_field = sub.residue_field
                else:
                    mod = [residue(FieldElt(sub, c, INF)) for c in top.minpoly]
                    self._residue_field = rf.ExtensionField(sub.residue_field, mod)
        return self._residue_field

    def zero(self) -> "FieldElt":
        return self.embed(0)

    def one(self) -> "FieldElt":
        return self.embed(1)

    def embed(self, x) -> "FieldElt":
        """Embed an exact rational; infinite precision."""
        return FieldElt(self, _const_data(self.steps, Fraction(x)), INF)

    def gen(self, level: int = -1) -> "FieldElt":
        """Generator of the given step (default: top step)."""
        if not self.steps:
            raise ValueError("prime field has no generator")
        level = level % len(self.steps)
        return FieldElt(self, _gen_data(self.steps, level), INF)

    def uniformizer(self) -> "FieldElt":
        """An element of valuation exactly 1/e (ord(p) = 1 normalization)."""
        if self._uniformizer is None:
            elt = self.embed(self.p)
            val = Fraction(1)
            for lvl, s in enumerate(self.steps):
                if s.kind == RAMIFIED:
                    gv = s.gen_val
                    target = _lattice_gen(gv, val)
                    a, b = _bezout_for(gv, val, target)
                    elt = (self.gen(lvl) ** a) * (elt ** b)
                    val = target
            assert val == Fraction(1, self.e)
            self._uniformizer = elt
        return self._uniformizer

    def with_cap(self, cap) -> "LocalField":
        out = LocalField(self.p, self.steps, cap, self.degree_cap, _parent=self._parent)
        out._residue_field = self._residue_field
        return out

    # -- extensions ----------------------------------------------------------

    def _check_cap(self, deg: int):
        if self.degree_cap is not None and self.degree * deg > self.degree_cap:
            raise ExtensionCapError(
                f"extension degree {self.degree * deg} exceeds cap {self.degree_cap}"
            )

    def adjoin_unramified(self, minpoly) -> "LocalField":
        """Adjoin a root of a monic integral polynomial whose reduction is
        irreducible over the residue field."""
        coeffs = [self.coerce(c) for c in minpoly]
        deg = len(coeffs) - 1
        if deg < 2:
            raise ValueError("unramified step needs degree >= 2")
        if coeffs[-1] != self.one():
            raise ValueError("minimal polynomial must be monic")
        for c in coeffs:
            if c.val_repr() < 0:
                raise ValueError("unramified step needs integral coefficients")
        red = [residue(c) for c in coeffs]
        _, facs = rf.factor(red, self.residue_field)
        if len(facs) != 1 or facs[0][1] != 1 or len(facs[0][0]) != deg + 1:
            raise ValueError("reduction is not irreducible: not an unramified step")
        self._check_cap(deg)
        step = Step(UNRAMIFIED, tuple(c.data for c in coeffs), deg, Fraction(0))
        return LocalField(self.p, self.steps + (step,), self.cap, self.degree_cap, _parent=self)

    def adjoin_ramified(self, minpoly) -> "LocalField":
        """Adjoin a root of a monic polynomial whose Newton polygon is a single
        segment of slope -v with v = ord(constant term)/deg and v*e*deg coprime
        to deg; such polynomials are irreducible (generalized Eisenstein)."""
        coeffs = [self.coerce(c) for c in minpoly]
        deg = len(coeffs) - 1
        if deg < 2:
            raise ValueError("ramified step needs degree >= 2")
        if coeffs[-1] != self.one():
            raise ValueError("minimal polynomial must be monic")
        v0 = coeffs[0].val_repr()
        if v0.is_infinite:
            raise ValueError("zero constant term")
        gen_val = v0.finite / deg  # valuation of the adjoined root
        h = gen_val * deg * self.e
        if h.denominator != 1:
            raise ValueError("constant term valuation outside the value group")
        if h == 0 or gcd(abs(int(h)), deg) != 1:
            raise ValueError("slope denominator differs from degree: not certifiably irreducible")
        for i in range(1, deg):
            vi = coeffs[i].val_repr()
            need = v0.finite - gen_val * i
            if vi < ValQ(need):
                raise ValueError("Newton polygon is not a single segment")
        self._check_cap(deg)
        step = Step(RAMIFIED, tuple(c.data for c in coeffs), deg, gen_val)
        return LocalField(self.p, self.steps + (step,), self.cap, self.degree_cap, _parent=self)

    # -- element plumbing ----------------------------------------------------

    def coerce(self, x) -> "FieldElt":
        if isinstance(x, FieldElt):
            if x.field is self:
                return x
            if x.field.p == self.p and _is_prefix(x.field.steps, self.steps):
                return x.lift_to(self)
            raise TypeError("element of an incompatible field")
        return self.embed(x)

    def lift_residue(self, x: rf.FFElt) -> "FieldElt":
        """A canonical integral lift of a residue-field element."""
        return FieldElt(self, _lift_res_data(self.steps, self.residue_field, x), INF)

    def __repr__(self):
        parts = [f"Q_{self.p}"]
        for s in self.steps:
            parts.append(f"{s.kind[:4]}{s.degree}")
        return "+".join(parts)


def adjoin(field: LocalField, kind: str, minpoly) -> LocalField:
    """Extend `field` by a validated unramified or Eisenstein-type step."""
    if kind == UNRAMIFIED:
        return field.adjoin_unramified(minpoly)
    if kind in (RAMIFIED, "eisenstein"):
        return field.adjoin_ramified(minpoly)
    raise ValueError(f"unknown step kind {kind!r}")


def _is_prefix(short, long) -> bool:
    return len(short) <= len(long) and all(a == b for a, b in zip(short, long))


def _lattice_gen(a: Fraction, b: Fraction) -> Fraction:
    den = (a.denominator * b.denominator) // gcd(a.denominator, b.denominator)
    g = gcd(abs(int(a * den)), abs(int(b * den)))
    return Fraction(g, den)


def _bezout_for(a: Fraction, b: Fraction, target: Fraction):
    """Integers (x, y) with x*a + y*b == target."""
    D = a.denominator * b.denominator
    ai, bi, ti = int(a * D), int(b * D), int(target * D)

    def ext_gcd(x, y):
        if y == 0:
            return x, 1, 0
        g2, u, v = ext_gcd(y, x % y)
        return g2, v, u - (x // y) * v

    g2, u, v = ext_gcd(ai, bi)
    assert ti % g2 == 0
    k = ti // g2
    return u * k, v * k


# nested-data constructors ----------------------------------------------------


def _const_data(steps, x: Fraction):
    data = x
    for s in steps:
        data = (data,) + tuple(_zero_like(data) for _ in range(s.degree - 1))
    return data


def _zero_like(data):
    if isinstance(data, tuple):
        return tuple(_zero_like(c) for c in data)
    return Fraction(0)


def _zero_data(steps):
    return _const_data(steps, Fraction(0))


def _gen_data(steps, level: int):
    zero = _zero_data(steps[:level])
    one = _const_data(steps[:level], Fraction(1))
    deg = steps[level].degree
    data = (zero, one) + tuple(_zero_data(steps[:level]) for _ in range(deg - 2))
    for s in steps[level + 1:]:
        data = (data,) + tuple(_zero_like(data) for _ in range(s.degree - 1))
    return data


def _lift_res_data(steps, res_field, x: rf.FFElt):
    if isinstance(res_field, rf.PrimeField):
        return _const_data(steps, Fraction(x.data))
    top_unram = max(i for i, s in enumerate(steps) if s.kind == UNRAMIFIED)
    sub_steps = steps[:top_unram]
    coords = [
        _lift_res_data(sub_steps, res_field.base, rf.FFElt(res_field.base, c))
        for c in x.data
    ]
    data = tuple(coords)
    for s in steps[top_unram + 1:]:
        data = (data,) + tuple(_zero_like(data) for _ in range(s.degree - 1))
    return data


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class FieldElt:
    """Precision-tracked element of a LocalField.

    `data` is the nested coordinate representation (exact rationals at the
    base), `prec` the valuation up to which the representation agrees with
    the value it stands for (INF when the representation is the value).
    """

    __slots__ = ("field", "data", "prec", "_vcache")

    def __init__(self, field: LocalField, data, prec: ValQ = INF):
        self.field = field
        self.data = data
        self.prec = prec
        self._vcache = None

    def _coerce(self, other) -> "FieldElt":
        if isinstance(other, FieldElt):
            if other.field is self.field:
                return other
            return self.field.coerce(other)
        return self.field.embed(other)

    def lift_to(self, field: LocalField) -> "FieldElt":
        if not (field.p == self.field.p and _is_prefix(self.field.steps, field.steps)):
            raise TypeError("not a tower extension")
        data = self.data
        for s in field.steps[len(self.field.steps):]:
            data = (data,) + tuple(_zero_like(data) for _ in range(s.degree - 1))
        return FieldElt(field, data, self.prec)

    def val_repr(self) -> ValQ:
        """Exact valuation of the representation (INF for the zero data)."""
        if self._vcache is None:
            self._vcache = _val(self.field.steps, self.field.p, self.data)
        return self._vcache

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        prec = vmin(self.prec, other.prec)
        return FieldElt(self.field, _add(self.field.steps, self.data, other.data), prec)

    __radd__ = __add__

    def __neg__(self):
        return FieldElt(self.field, _neg(self.field.steps, self.data), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prec = _mul_prec(self, other)
        return FieldElt(
            self.field, _mul(self.field.steps, self.field.p, self.data, other.data), prec
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElt":
        v = self.val_repr()
        if v.is_infinite:
            raise ZeroDivisionError("inverse of zero")
        prec = INF if self.prec.is_infinite else ValQ(self.prec.finite - 2 * v.finite)
        return FieldElt(self.field, _inv(self.field.steps, self.field.p, self.data), prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

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

    def __eq__(self, other):
        if not isinstance(other, FieldElt):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.field is not other.field:
            try:
                a, b = _same_field(self, other)
            except TypeError:
                return NotImplemented
            return a.data == b.data
        return self.data == other.data

    def __hash__(self):
        return hash((id(self.field), self.data))

    def __bool__(self):
        return not self.val_repr().is_infinite

    def reduce_mod(self, n) -> "FieldElt":
        """Truncate coordinates, keeping the element exactly modulo valuation n.

        Sets prec to min(prec, n); the explicit size-control point.
        """
        n = Fraction(n)
        data = _reduce(self.field.steps, self.field.p, self.data, n)
        return FieldElt(self.field, data, vmin(self.prec, ValQ(n)))

    def __repr__(self):
        return f"FieldElt({self.data!r}, prec={self.prec})"


def _same_field(a: FieldElt, b: FieldElt):
    if a.field is b.field:
        return a, b
    if _is_prefix(a.field.steps, b.field.steps):
        return a.lift_to(b.field), b
    if _is_prefix(b.field.steps, a.field.steps):
        return a, b.lift_to(a.field)
    raise TypeError("elements of unrelated fields")


def _mul_prec(x: FieldElt, y: FieldElt) -> ValQ:
    if x.prec.is_infinite and y.prec.is_infinite:
        return INF
    vx, vy = x.val_repr(), y.val_repr()
    out = INF
    if not x.prec.is_infinite:
        out = vmin(out, x.prec + (vy if not vy.is_infinite else y.prec))
    if not y.prec.is_infinite:
        out = vmin(out, y.prec + (vx if not vx.is_infinite else x.prec))
    return out


# -- recursive data ops --------------------------------------------------------


def _add(steps, a, b):
    if not steps:
        return a + b
    sub = steps[:-1]
    return tuple(_add(sub, x, y) for x, y in zip(a, b))


def _neg(steps, a):
    if not steps:
        return -a
    sub = steps[:-1]
    return tuple(_neg(sub, x) for x in a)


def _is_zero_data(a) -> bool:
    if isinstance(a, tuple):
        return all(_is_zero_data(c) for c in a)
    return a == 0


def _mul(steps, p, a, b):
    if not steps:
        return a * b
    s = steps[-1]
    sub = steps[:-1]
    n = s.degree
    prod = [_zero_data(sub) for _ in range(2 * n - 1)]
    for i, x in enumerate(a):
        if _is_zero_data(x):
            continue
        for j, y in enumerate(b):
            if _is_zero_data(y):
                continue
            prod[i + j] = _add(sub, prod[i + j], _mul(sub, p, x, y))
    mod = s.minpoly
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if _is_zero_data(c):
            continue
        for i in range(n):
            if _is_zero_data(mod[i]):
                continue
            prod[k - n + i] = _add(sub, prod[k - n + i], _neg(sub, _mul(sub, p, c, mod[i])))
        prod[k] = _zero_data(sub)
    return tuple(prod[:n])


def _inv(steps, p, a):
    if not steps:
        if a == 0:
            raise ZeroDivisionError
        return 1 / Fraction(a)
    s = steps[-1]
    sub = steps[:-1]

    def trim(f):
        while f and _is_zero_data(f[-1]):
            f.pop()
        return f

    def pmul(f, g):
        if not f or not g:
            return []
        out = [_zero_data(sub) for _ in range(len(f) + len(g) - 1)]
        for i, x in enumerate(f):
            if _is_zero_data(x):
                continue
            for j, y in enumerate(g):
                out[i + j] = _add(sub, out[i + j], _mul(sub, p, x, y))
        return trim(out)

    def psub(f, g):
        n = max(len(f), len(g))
        out = []
        for i in range(n):
            x = f[i] if i < len(f) else _zero_data(sub)
            y = g[i] if i < len(g) else _zero_data(sub)
            out.append(_add(sub, x, _neg(sub, y)))
        return trim(out)

    def pdivmod(f, g):
        f = trim(list(f))
        g = trim(list(g))
        ginv = _inv(sub, p, g[-1])
        q = [_zero_data(sub)] * max(0, len(f) - len(g) + 1)
        r = list(f)
        while len(r) >= len(g):
            c = _mul(sub, p, r[-1], ginv)
            k = len(r) - len(g)
            q[k] = c
            for i in range(len(g)):
                r[k + i] = _add(sub, r[k + i], _neg(sub, _mul(sub, p, c, g[i])))
            r.pop()
            r = trim(r)
            if not r:
                break
        return trim(q), r

    f = trim(list(s.minpoly))
    g = trim(list(a))
    r0, r1 = f, g
    s0, s1 = [], [_const_data(sub, Fraction(1))]
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
    c = _inv(sub, p, r0[0])
    inv = [_mul(sub, p, x, c) for x in s0]
    out = [_zero_data(sub)] * s.degree
    for i, x in enumerate(inv[: s.degree]):
        out[i] = x
    return tuple(out)


def _val(steps, p, a) -> ValQ:
    if not steps:
        return ordp(a, p)
    s = steps[-1]
    sub = steps[:-1]
    best = INF
    for i, c in enumerate(a):
        v = _val(sub, p, c)
        if v.is_infinite:
            continue
        term = ValQ(v.finite + i * s.gen_val)
        if term < best:
            best = term
    return best


def _reduce(steps, p, a, n: Fraction, offset: Fraction = Fraction(0)):
    if not steps:
        a = Fraction(a)
        if a == 0:
            return a
        cutoff = n - offset
        v = ordp(a, p).finite  # integer at the base level
        if v >= cutoff:
            return Fraction(0)
        num, den = a.numerator, a.denominator
        k = int(v)
        if k >= 0:
            num //= p ** k
        else:
            den //= p ** (-k)
        m = _ceil_frac(cutoff - k)
        mod = p ** m
        r = (num * pow(den, -1, mod)) % mod
        return Fraction(r) * Fraction(p) ** k
    s = steps[-1]
    sub = steps[:-1]
    return tuple(_reduce(sub, p, c, n, offset + i * s.gen_val) for i, c in enumerate(a))


# ---------------------------------------------------------------------------
# spec operations
# ---------------------------------------------------------------------------


def elt_val(x: FieldElt) -> ValQ:
    """Exact valuation of x when determined at x's precision.

    Raises PrecisionLoss when the representation's valuation reaches the
    known precision (the element is indistinguishable from 0 and the caller
    must escalate).  Exact elements always succeed; exact zero gives INF.
    """
    v = x.val_repr()
    if x.prec.is_infinite or v < x.prec:
        return v
    raise PrecisionLoss(x.prec)


def try_elt_val(x: FieldElt):
    """elt_val returning None instead of signaling."""
    try:
        return elt_val(x)
    except PrecisionLoss:
        return None


def residue(x: FieldElt) -> rf.FFElt:
    """Image of an integral element in the residue field O/m."""
    v = x.val_repr()
    if not v.is_infinite and v.finite < 0:
        raise ValueError("negative valuation has no residue")
    return _res(x.field.steps, x.field.p, x.field.residue_field, x.data)


def _res(steps, p, res_field, a):
    if not steps:
        fr = Fraction(a)
        return res_field.from_int(fr.numerator * pow(fr.denominator, -1, p))
    s = steps[-1]
    sub = steps[:-1]
    if s.kind == RAMIFIED:
        return _res(sub, p, res_field, a[0])
    base = res_field.base
    gen = res_field.gen()
    out = res_field.zero()
    power = res_field.one()
    for c in a:
        out = out + power * res_field.coerce(_res(sub, p, base, c))
        power = power * gen
    return out
