"""Homogeneous representations of rational maps: normalization, conjugation,
the resultant-order function on type II points, its restriction to paths, and
the local direction classifier.

A degree-d map is carried as the coefficient pair (F, G), stored descending
(a_d..a_0 / b_d..b_0) as exact rationals at the base, or as tower elements
after a conjugation into an extension.  The valuation of the conjugated
resultant is always obtained through the transformation law
ord Res(F^g, G^g) = ord Res(F, G) + (d^2+d) ord(det g); the Sylvester
determinant itself is computed once, over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gf as rf
from .padic import (
    INF,
    FieldElt,
    LocalField,
    PrecisionLoss,
    ValQ,
    elt_val,
    ordp,
    residue,
    vmin,
)
from .polyroots import resultant


class DegenerateMapError(ValueError):
    """The pair has a common factor (zero resultant)."""


DECREASING = "decreasing"
CONSTANT = "constant"
INCREASING = "increasing"


class HomogPair:
    """Degree-d homogeneous pair (F, G); `a` and `b` hold a_d..a_0, b_d..b_0.

    `field` is None for exact rational coefficients over Q (viewed inside
    Q_p for the prime p), or the LocalField the coefficients live in.
    """

    __slots__ = ("d", "a", "b", "p", "field", "normalized")

    def __init__(self, d, a, b, p, field=None, normalized=False):
        if len(a) != d + 1 or len(b) != d + 1:
            raise ValueError("coefficient sequences must have length d+1")
        if field is None:
            a = tuple(Fraction(c) for c in a)
            b = tuple(Fraction(c) for c in b)
        else:
            a = tuple(field.coerce(c) for c in a)
            b = tuple(field.coerce(c) for c in b)
        self.d = d
        self.a = a
        self.b = b
        self.p = p
        self.field = field
        self.normalized = normalized

    def a_coeff(self, ell: int):
        """Coefficient of X^ell Y^(d-ell) in F."""
        return self.a[self.d - ell]

    def b_coeff(self, ell: int):
        return self.b[self.d - ell]

    def coeff_vals(self):
        """Exact valuations of all coefficients, in storage order (a then b)."""
        if self.field is None:
            return [ordp(c, self.p) for c in self.a + self.b]
        return [elt_val(c) for c in self.a + self.b]

    def is_rational(self) -> bool:
        return self.field is None

    def __repr__(self):
        return f"HomogPair(d={self.d}, p={self.p}, field={self.field})"


@dataclass
class MobiusMap:
    """An invertible 2x2 coordinate change [[A, B], [C, D]]."""

    A: object
    B: object
    C: object
    D: object

    def det(self):
        return self.A * self.D - self.B * self.C

    def is_rational(self) -> bool:
        return not any(isinstance(x, FieldElt) for x in (self.A, self.B, self.C, self.D))

    def entries(self):
        return (self.A, self.B, self.C, self.D)

    @classmethod
    def identity(cls):
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


class TypeIIPoint:
    """The point of the disc D(center, p^s): exact center, exact radius
    exponent s = log_p(radius)."""

    __slots__ = ("center", "s")

    def __init__(self, center, s):
        self.center = center if isinstance(center, FieldElt) else Fraction(center)
        self.s = Fraction(s)

    @property
    def field(self):
        return self.center.field if isinstance(self.center, FieldElt) else None

    def center_val(self, p) -> ValQ:
        if isinstance(self.center, FieldElt):
            return elt_val(self.center)
        return ordp(self.center, p)

    def __repr__(self):
        return f"TypeIIPoint(center={self.center!r}, s={self.s})"


class Direction:
    """A tangent direction at a type II point: toward infinity, or the
    residue class of an integral element beta."""

    __slots__ = ("beta",)

    def __init__(self, beta=None):
        self.beta = beta  # None means the direction at infinity

    @classmethod
    def at_infinity(cls):
        return cls(None)

    @classmethod
    def residue_class(cls, beta):
        return cls(beta)

    @property
    def is_infinity(self):
        return self.beta is None

    def __repr__(self):
        return "Direction(oo)" if self.is_infinity else f"Direction({self.beta!r})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def normalize(pair: HomogPair):
    """Scale so the minimum coefficient valuation is 0; returns the new pair
    and the valuation removed.  Coefficients indistinguishable from zero are
    tolerated as long as the minimum is determined below their precision."""
    m = INF
    floor = INF
    for c in pair.a + pair.b:
        if isinstance(c, FieldElt):
            v = c.val_repr()
            if not c.prec.is_infinite and v >= c.prec:
                floor = vmin(floor, c.prec)
                continue
        else:
            v = ordp(c, pair.p)
        m = vmin(m, v)
    if m.is_infinite or not m < floor:
        if floor.is_infinite:
            raise DegenerateMapError("zero pair")
        raise PrecisionLoss(floor)
    if m.finite == 0:
        return HomogPair(pair.d, pair.a, pair.b, pair.p, pair.field, True), ValQ(0)
    if pair.field is None:
        scale = Fraction(pair.p) ** int(-m.finite)
    else:
        k = m.finite * pair.field.e
        scale = pair.field.uniformizer() ** (-int(k))
    a = tuple(c * scale for c in pair.a)
    b = tuple(c * scale for c in pair.b)
    return HomogPair(pair.d, a, b, pair.p, pair.field, True), m


def ordres(pair: HomogPair) -> ValQ:
    """Valuation of the resultant of a normalized representation; 0 exactly
    for good reduction.  Exact-rational coefficients only."""
    if not pair.is_rational():
        raise ValueError("ordres needs exact rational coefficients")
    res = resultant(pair.a, pair.b, pair.d)
    if res == 0:
        raise DegenerateMapError("zero resultant")
    base = ordp(res, pair.p)
    vals = pair.coeff_vals()
    m = min(v.finite for v in vals if not v.is_infinite)
    return ValQ(base.finite - 2 * pair.d * m)


def conjugate(pair: HomogPair, gamma: MobiusMap) -> HomogPair:
    """The pair (D*F(AX+BY, CX+DY) - B*G(...), -C*F(...) + A*G(...)); not
    normalized."""
    rational = pair.is_rational() and gamma.is_rational()
    if rational:
        A, B, C, D = (Fraction(x) for x in gamma.entries())
        zero, one = Fraction(0), Fraction(1)
        field = None
        a, b = pair.a, pair.b
    else:
        field = pair.field
        for x in gamma.entries():
            if isinstance(x, FieldElt):
                if field is None or len(x.field.steps) > len(field.steps):
                    field = x.field
        if field is None:
            field = pair.field
        A, B, C, D = (field.coerce(x) for x in gamma.entries())
        zero, one = field.zero(), field.one()
        a = tuple(field.coerce(c) for c in pair.a)
        b = tuple(field.coerce(c) for c in pair.b)
    det = A * D - B * C
    if (det == 0) if rational else det.val_repr().is_infinite:
        raise ValueError("singular coordinate change")
    d = pair.d
    # rows[l] = coefficients (descending in X) of (AX+BY)^l (CX+DY)^(d-l)
    pow_ab = [[one]]
    for _ in range(d):
        prev = pow_ab[-1]
        cur = [zero] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i] = cur[i] + c * A
            cur[i + 1] = cur[i + 1] + c * B
        pow_ab.append(cur)
    pow_cd = [[one]]
    for _ in range(d):
        prev = pow_cd[-1]
        cur = [zero] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i] = cur[i] + c * C
            cur[i + 1] = cur[i + 1] + c * D
        pow_cd.append(cur)

    def subst(coeffs_desc):
        out = [zero] * (d + 1)
        for idx, cf in enumerate(coeffs_desc):
            ell = d - idx  # exponent of X
            if (cf == 0) if rational else cf.val_repr().is_infinite:
                continue
            row1, row2 = pow_ab[ell], pow_cd[d - ell]
            for i, c1 in enumerate(row1):
                if (c1 == 0) if rational else c1.val_repr().is_infinite:
                    continue
                for j, c2 in enumerate(row2):
                    out[i + j] = out[i + j] + cf * c1 * c2
        return out

    fa = subst(a)
    fb = subst(b)
    new_a = tuple(D * x - B * y for x, y in zip(fa, fb))
    new_b = tuple(-(C * x) + A * y for x, y in zip(fa, fb))
    return HomogPair(d, new_a, new_b, pair.p, field, False)


def translate(pair: HomogPair, beta) -> HomogPair:
    """Conjugation by [[1, beta], [0, 1]] (z -> z + beta)."""
    fld = beta.field if isinstance(beta, FieldElt) else pair.field
    one = Fraction(1) if fld is None else fld.one()
    zero = Fraction(0) if fld is None else fld.zero()
    return conjugate(pair, MobiusMap(one, beta, zero, one))


def ordres_at(pair: HomogPair, Q: TypeIIPoint) -> ValQ:
    """Value of the resultant-order function at the type II point of
    D(center, p^s), through gamma = [[A, center], [0, 1]] with ord(A) = -s and
    the transformation law.  The pair must be normalized over Q."""
    if not (pair.is_rational() and pair.normalized):
        raise ValueError("ordres_at needs a normalized rational pair")
    d = pair.d
    R = ordres(pair).finite
    s = Q.s
    p = pair.p
    if Q.field is None and s.denominator == 1:
        # fast exact path: everything stays rational
        A = Fraction(p) ** int(-s)
        gm = MobiusMap(A, Fraction(Q.center), Fraction(0), Fraction(1))
        conj = conjugate(pair, gm)
        m = min(
            (ordp(c, p) for c in conj.a + conj.b),
            key=lambda v: (v.is_infinite, v.q if not v.is_infinite else 0),
        )
        return ValQ(R + (d * d + d) * (-s) - 2 * d * m.finite)
    fld = Q.field if Q.field is not None else LocalField(p)
    k = s * fld.e
    if k.denominator != 1:
        pi = fld.uniformizer()
        step = [-pi] + [fld.zero()] * (k.denominator - 1) + [fld.one()]
        fld = fld.adjoin_ramified(step)
        k = s * fld.e
    A = fld.uniformizer() ** int(-k)
    center = fld.coerce(Q.center)
    gm = MobiusMap(A, center, fld.zero(), fld.one())
    conj = conjugate(pair, gm)
    # ambiguous coefficients cannot move the minimum unless the minimum would
    # reach their precision floor
    m = INF
    floor = INF
    for c in conj.a + conj.b:
        v = c.val_repr()
        if not c.prec.is_infinite and v >= c.prec:
            floor = vmin(floor, c.prec)
            continue
        m = vmin(m, v)
    if m.is_infinite or not m < floor:
        raise PrecisionLoss(floor)
    return ValQ(R + (d * d + d) * (-s) - 2 * d * m.finite)


def path_function(pair: HomogPair, R):
    """The affine terms of the path restriction at an anchored, normalized
    pair: (slope d^2+d-2dl, R - 2d ord(a_l)) for F and the (l+1)-shifted
    slopes for G, as a PWLFunc in t = ord(A) = -s."""
    from .pwl import PWLFunc

    d = pair.d
    R = Fraction(R.finite if isinstance(R, ValQ) else R)
    terms = []
    for ell in range(d + 1):
        for coeffs, shift in ((pair.a, 0), (pair.b, 1)):
            c = coeffs[d - ell]
            if pair.is_rational():
                v = ordp(c, pair.p)
            else:
                v = elt_val(c)
            if v.is_infinite:
                continue
            slope = d * d + d - 2 * d * (ell + shift)
            terms.append((slope, R - 2 * d * v.finite))
    return PWLFunc(terms)


def _shifted_vals(pair: HomogPair):
    """Coefficient valuations normalized so the minimum is 0 (no division)."""
    vals = pair.coeff_vals()
    m = INF
    for v in vals:
        m = vmin(m, v)
    if m.is_infinite:
        raise DegenerateMapError("zero pair")
    out = []
    for v in vals:
        out.append(INF if v.is_infinite else ValQ(v.finite - m.finite))
    return out[: pair.d + 1], out[pair.d + 1:]


def classify_direction(pair: HomogPair, direction: Direction) -> str:
    """Locally decreasing / constant / increasing in the given direction at
    the point where the (normalized) pair is anchored.

    The infinity direction reads the high-index coefficient conditions off the
    pair; a residue direction first forms the translated pair and reads the
    low-index conditions.  Constant is possible only for odd degree.
    """
    d = pair.d
    if direction.is_infinity:
        a_vals, b_vals = _shifted_vals(pair)

        def a_ok(pred):
            return all(a_vals[d - ell] > 0 for ell in range(d + 1) if pred(ell))

        def b_ok(pred):
            return all(b_vals[d - ell] > 0 for ell in range(d + 1) if pred(ell))

        if a_ok(lambda l: 2 * l >= d + 1) and b_ok(lambda l: 2 * l >= d - 1):
            return DECREASING
        if d % 2 == 1:
            mid_a = a_vals[d - (d + 1) // 2] == 0
            mid_b = b_vals[d - (d - 1) // 2] == 0
            if (mid_a or mid_b) and a_ok(lambda l: 2 * l > d + 1) and b_ok(
                lambda l: 2 * l > d - 1
            ):
                return CONSTANT
        return INCREASING
    moved = translate(pair, direction.beta)
    a_vals, b_vals = _shifted_vals(moved)

    def a_ok(pred):
        return all(a_vals[d - ell] > 0 for ell in range(d + 1) if pred(ell))

    def b_ok(pred):
        return all(b_vals[d - ell] > 0 for ell in range(d + 1) if pred(ell))

    if a_ok(lambda l: 2 * l <= d + 1) and b_ok(lambda l: 2 * l <= d - 1):
        return DECREASING
    if d % 2 == 1:
        mid_a = a_vals[d - (d + 1) // 2] == 0
        mid_b = b_vals[d - (d - 1) // 2] == 0
        if (mid_a or mid_b) and a_ok(lambda l: 2 * l < d + 1) and b_ok(
            lambda l: 2 * l < d - 1
        ):
            return CONSTANT
    return INCREASING


def good_reduction_check(pair: HomogPair) -> bool:
    """Reduce the normalized pair, strip common factors of the reductions, and
    test whether the reduced map still has degree d."""
    if not pair.normalized:
        pair, _ = normalize(pair)
    d = pair.d
    if pair.field is None:
        fld = LocalField(pair.p)
        a = [fld.embed(c) for c in pair.a]
        b = [fld.embed(c) for c in pair.b]
    else:
        fld = pair.field
        a, b = list(pair.a), list(pair.b)
    kres = fld.residue_field
    fbar = rf.poly_trim([residue(c) for c in reversed(a)])  # ascending in z
    gbar = rf.poly_trim([residue(c) for c in reversed(b)])
    if not fbar or not gbar:
        return d == 0
    y_common = d - max(len(fbar) - 1, len(gbar) - 1)
    g = rf.poly_gcd(fbar, gbar, kres)
    common = y_common + (len(g) - 1)
    return common == 0


def rho_to_gauss(Q: TypeIIPoint, p=None) -> Fraction:
    """Logarithmic path distance from the base point of the unit disc:
    2 * max(0, log_p|center|, s) - s."""
    if isinstance(Q.center, FieldElt):
        cv = elt_val(Q.center)
    else:
        if p is None:
            raise ValueError("need the prime for a rational center")
        cv = ordp(Q.center, p)
    logc = Fraction(0) if cv.is_infinite else max(Fraction(0), -cv.finite)
    join = max(logc, Q.s, Fraction(0))
    return 2 * join - Q.s


def same_point(P: TypeIIPoint, Q: TypeIIPoint, p=None) -> bool:
    """Whether two (center, s) descriptions name the same disc: equal radii
    and centers within that radius."""
    if P.s != Q.s:
        return False
    c1, c2 = P.center, Q.center
    if isinstance(c1, FieldElt) or isinstance(c2, FieldElt):
        if not isinstance(c1, FieldElt):
            c1 = c2.field.embed(c1)
        if not isinstance(c2, FieldElt):
            c2 = c1.field.embed(c2)
        from .padic import _same_field

        c1, c2 = _same_field(c1, c2)
        dv = (c1 - c2).val_repr()
    else:
        if p is None:
            raise ValueError("need the prime for rational centers")
        dv = ordp(Fraction(c1) - Fraction(c2), p)
    return dv.is_infinite or dv.finite >= -P.s
