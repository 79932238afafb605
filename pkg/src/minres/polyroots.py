"""Polynomials over local fields: Newton polygons, Hensel lifting, root
finding in extension towers, and exact resultants over the rationals.

The root finder returns one record per batch of conjugate roots it can treat
through a single representative.  Records carry a weight (`orbit_size`): the
number of roots of the input the record stands for; weights always sum to the
degree.  A ramified batch may come back as several records that subdivide one
true conjugacy class -- harmless for the consumers here, which only need every
root covered by a representative with exact valuations.

Strategy per polynomial, after stripping exact zero roots:

1. single Newton segment whose slope denominator equals the degree: the
   polynomial itself is irreducible (generalized Eisenstein); adjoin its own
   root.
2. slope groups separated by value-group thresholds: isolate them as genuine
   factors with Hensel lifting and recurse.
3. one group, slope in the value group: scale to slope zero and dispatch on
   the residual factorization (Hensel root lift / unramified step / shift to
   the cluster and recurse).
4. one group, fractional slope: index prime to p -> Eisenstein step built from
   a residual root; p dividing the index -> refine the unit data through the
   power transform y = z^e / pi^h first, then adjoin from the refined data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import gf as rf
from .padic import (
    INF,
    FieldElt,
    LocalField,
    PrecisionLoss,
    ValQ,
    residue,
    vmin,
)


class FactoringDepthError(Exception):
    """The wild-ramification refinement exceeded its depth guard."""


# ---------------------------------------------------------------------------
# dense polynomials over a LocalField
# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial over a LocalField; coefficients ascending, exact zero
    tail trimmed (approximate zeros are kept and surface as precision signals
    when they matter)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: LocalField, coeffs):
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1].val_repr().is_infinite and cs[-1].prec.is_infinite:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_rationals(cls, field: LocalField, coeffs):
        return cls(field, [field.embed(Fraction(c)) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> FieldElt:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def _common(self, x):
        """Lift self and x into the larger of the two fields."""
        if isinstance(x, FieldElt) and x.field is not self.field:
            if len(x.field.steps) >= len(self.field.steps):
                return self.lift_to(x.field), x
            return self, self.field.coerce(x)
        if not isinstance(x, FieldElt):
            return self, self.field.embed(Fraction(x))
        return self, x

    def __call__(self, x) -> FieldElt:
        poly, x = self._common(x)
        acc = x.field.zero()
        for c in reversed(poly.coeffs):
            acc = acc * x + c
        return acc

    def lift_to(self, field: LocalField) -> "Poly":
        return Poly(field, [c.lift_to(field) for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("monic of zero polynomial")
        inv = self.coeffs[-1].inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def shift(self, a) -> "Poly":
        """Compose with z + a."""
        poly, a = self._common(a)
        cs = list(poly.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return Poly(a.field, cs)

    def scale(self, a) -> "Poly":
        """P(a*z)."""
        poly, a = self._common(a)
        out = []
        power = a.field.one()
        for c in poly.coeffs:
            out.append(c * power)
            power = power * a
        return Poly(a.field, out)

    def mul_scalar(self, a) -> "Poly":
        poly, a = self._common(a)
        return Poly(a.field, [c * a for c in poly.coeffs])

    def reverse(self) -> "Poly":
        return Poly(self.field, list(reversed(self.coeffs)))

    def strip_low(self, k: int) -> "Poly":
        return Poly(self.field, self.coeffs[k:])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.val_repr().is_infinite:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] - other[i] for i in range(n)])

    def divmod_monic(self, other: "Poly"):
        """Division with remainder by a monic polynomial."""
        m = len(other.coeffs)
        if m == 0:
            raise ZeroDivisionError
        r = list(self.coeffs)
        n = len(r)
        q = [self.field.zero()] * max(0, n - m + 1)
        for k in range(n - m, -1, -1):
            c = r[k + m - 1]
            q[k] = c
            if not c.val_repr().is_infinite:
                for i in range(m - 1):
                    r[k + i] = r[k + i] - c * other.coeffs[i]
            r[k + m - 1] = self.field.zero()
        return Poly(self.field, q), Poly(self.field, r[: m - 1])

    def reduce_mod(self, n) -> "Poly":
        return Poly(self.field, [c.reduce_mod(n) for c in self.coeffs])

    def __repr__(self):
        return f"Poly(deg {self.degree} over {self.field})"


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NPSegment:
    slope: Fraction
    length: int


def newton_polygon(poly: Poly):
    """Lower convex hull of (i, ord(c_i)) over the nonzero span of `poly`.

    Segments come back in strictly increasing slope order; a root of valuation
    v corresponds to a segment of slope -v whose horizontal length counts such
    roots.  Exact zero coefficients are skipped; a coefficient ambiguous at
    its precision participates only as a lower bound and raises PrecisionLoss
    if the hull would need its exact value.
    """
    if poly.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    pts = []
    bounds = []
    for i, c in enumerate(poly.coeffs):
        v = c.val_repr()
        if not c.prec.is_infinite and v >= c.prec:
            bounds.append((i, c.prec))
            continue
        if v.is_infinite:
            continue
        pts.append((i, v.finite))
    if not pts or pts[-1][0] != poly.degree:
        raise PrecisionLoss(poly.coeffs[-1].prec if poly.coeffs else ValQ(0))
    start = pts[0][0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (pt[1] - y2) * (x2 - x1) <= (y2 - y1) * (pt[0] - x2):
                hull.pop()
            else:
                break
        hull.append(pt)
    for i, b in bounds:
        if i < start:
            raise PrecisionLoss(b)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                line = Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (i - x1)
                if b.finite < line:
                    raise PrecisionLoss(b)
    return [
        NPSegment(Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]


# ---------------------------------------------------------------------------
# exact rational polynomials (base level)
# ---------------------------------------------------------------------------


def q_trim(f):
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def q_mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return q_trim(out)


def q_divmod(f, g):
    f, g = q_trim(f), q_trim(g)
    if not g:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while r and len(r) >= len(g):
        c = r[-1] / g[-1]
        k = len(r) - len(g)
        q[k] = c
        for i in range(len(g)):
            r[k + i] -= c * g[i]
        r.pop()
        r = q_trim(r)
    return q_trim(q), q_trim(r)


def q_gcd(f, g):
    f, g = q_trim(f), q_trim(g)
    while g:
        f, g = g, q_divmod(f, g)[1]
    if f:
        lc = f[-1]
        f = [c / lc for c in f]
    return f


def q_deriv(f):
    return q_trim([i * f[i] for i in range(1, len(f))])


def squarefree_part(coeffs):
    """(squarefree part, multiplicity map) of an exact rational polynomial.

    Yun decomposition: the map sends each squarefree factor (as a coefficient
    tuple) to its multiplicity; the returned polynomial is their product.
    """
    f = q_trim(coeffs)
    if len(f) <= 1:
        return f, {}
    pieces = {}
    g = q_gcd(f, q_deriv(f))
    w, _ = q_divmod(f, g)
    m = 1
    while len(w) > 1:
        y = q_gcd(w, g)
        piece, _ = q_divmod(w, y)
        if len(piece) > 1:
            pieces[tuple(piece)] = m
        w = y
        g, _ = q_divmod(g, y)
        m += 1
    sf = [Fraction(1)]
    for piece in pieces:
        sf = q_mul(sf, list(piece))
    return sf, pieces


def resultant(f_coeffs, g_coeffs, d: int) -> Fraction:
    """Determinant of the 2d x 2d Sylvester matrix of two coefficient
    sequences of formal degree d (descending, a_d..a_0), computed
    fraction-free over the integers."""
    a = [Fraction(c) for c in f_coeffs]
    b = [Fraction(c) for c in g_coeffs]
    if len(a) != d + 1 or len(b) != d + 1:
        raise ValueError("coefficient sequences must have length d+1")
    if d == 0:
        return Fraction(1)
    den = 1
    for c in a + b:
        den = den * c.denominator // gcd(den, c.denominator)
    ai = [int(c * den) for c in a]
    bi = [int(c * den) for c in b]
    n = 2 * d
    m = [[0] * n for _ in range(n)]
    for r in range(d):
        for j in range(d + 1):
            m[r][r + j] = ai[j]
            m[d + r][r + j] = bi[j]
    return Fraction(_bareiss_det(m), den ** (2 * d))


def _bareiss_det(m) -> int:
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hensel machinery
# ---------------------------------------------------------------------------


def hensel_root(g: Poly, x0: FieldElt, want_prec, max_iter: int = 80) -> FieldElt:
    """Newton-refine a seed with val(g(x0)) > 2 val(g'(x0)) until
    val(g(x)) - val(g'(x)) reaches want_prec."""
    want = Fraction(want_prec)
    gf, x = g._common(x0)
    fld = x.field
    gf = gf.lift_to(fld) if gf.field is not fld else gf
    dg = gf.derivative()
    for _ in range(max_iter):
        dx = dg(x)
        vd = dx.val_repr()
        if vd.is_infinite:
            raise PrecisionLoss(ValQ(want))
        gx = gf(x)
        vg = gx.val_repr()
        if vg.is_infinite or vg.finite >= want + max(vd.finite, 0):
            prec = x.prec if vg.is_infinite else vmin(x.prec, ValQ(vg.finite - vd.finite))
            return FieldElt(fld, x.data, prec)
        if not vg > 2 * vd.finite:
            raise PrecisionLoss(vg)
        x = (x - gx / dx).reduce_mod(want + vd.finite + 1)
    raise PrecisionLoss(ValQ(want))


def hensel_factor(g: Poly, a0: Poly, b0: Poly, want_prec, max_iter: int = 256):
    """Lift g ~ a0*b0 (coprime reductions, a0 monic) to g = a*b to precision
    want_prec.  Returns (a, b), a monic with deg a = deg a0; the degree of b
    may exceed deg b0 up to deg g - deg a0 (degree-deficit factors)."""
    fld = g.field
    kres = fld.residue_field
    want = Fraction(want_prec)
    abar = [residue(c) for c in a0.coeffs]
    bbar = [residue(c) for c in b0.coeffs]
    sbar, tbar = _poly_ext_bezout(abar, bbar, kres)
    s = Poly(fld, [fld.lift_residue(c) for c in sbar])
    t = Poly(fld, [fld.lift_residue(c) for c in tbar])
    a, b = a0, b0
    alpha = a0.degree
    beta = g.degree - alpha
    cut = want + 2
    for _ in range(max_iter):
        e = (g - a * b).reduce_mod(cut)
        if all(c.val_repr() >= want for c in e.coeffs):
            return a, b
        _, da = (t * e).divmod_monic(a)
        db, _ = (e - b * da).divmod_monic(a)
        acs = [(a[i] + da[i]).reduce_mod(cut) for i in range(alpha)] + [fld.one()]
        bcs = [(b[i] + db[i]).reduce_mod(cut) for i in range(beta + 1)]
        a = Poly(fld, acs)
        b = Poly(fld, bcs)
        # quadratic refresh of the Bezout pair: keep s*a + t*b = 1 deep
        one = Poly(fld, [fld.one()])
        eps = (s * a + t * b - one).reduce_mod(cut)
        if any(not c.val_repr().is_infinite for c in eps.coeffs):
            _, dt = (t * eps).divmod_monic(a)
            ds, _ = (eps - b * dt).divmod_monic(a)
            s = (s - ds).reduce_mod(cut)
            t = (t - dt).reduce_mod(cut)
    raise PrecisionLoss(ValQ(want))


def _poly_ext_bezout(f, g, field):
    """s, t with s*f + t*g = 1 over a finite field (f, g coprime)."""
    f = rf.poly_trim(list(f))
    g = rf.poly_trim(list(g))
    r0, r1 = f, g
    s0, s1 = [field.one()], []
    t0, t1 = [], [field.one()]
    while r1:
        q, r = rf.poly_divmod(r0, r1, field)
        r0, r1 = r1, r
        s0, s1 = s1, rf.poly_sub(s0, rf.poly_mul(q, s1, field), field)
        t0, t1 = t1, rf.poly_sub(t0, rf.poly_mul(q, t1, field), field)
    if len(r0) != 1:
        raise ValueError("polynomials are not coprime")
    c = r0[0].inverse()
    return [x * c for x in s0], [x * c for x in t0]


# ---------------------------------------------------------------------------
# valuation-split isolation
# ---------------------------------------------------------------------------


def _integralize(g: Poly):
    """Scale by a uniformizer power so the minimum coefficient valuation is 0."""
    fld = g.field
    m = INF
    for c in g.coeffs:
        m = vmin(m, c.val_repr())
    if m.is_infinite:
        raise ValueError("zero polynomial")
    if m.finite == 0:
        return g
    k = m.finite * fld.e
    assert k.denominator == 1
    return g.mul_scalar(fld.uniformizer() ** (-int(k)))


def split_at(g: Poly, c, want_prec):
    """Hensel-split g into monic (val > c, val == c, val < c) root parts.

    c must lie in the value group.  The parts multiply to g up to a scalar and
    the working precision; empty parts come back as None.
    """
    fld = g.field
    c = Fraction(c)
    ce = c * fld.e
    if ce.denominator != 1:
        raise ValueError("split threshold outside the value group")
    s = fld.uniformizer() ** int(ce)
    sinv = s.inverse()
    h = _integralize(g.scale(s))

    def unscale(p: Poly) -> Poly:
        return Poly(fld, [cf * sinv ** i for i, cf in enumerate(p.coeffs)]).monic()

    hbar = rf.poly_trim([residue(cf) for cf in h.coeffs])
    a = 0
    while a < len(hbar) and not hbar[a]:
        a += 1
    parts = [None, None, None]
    work = h
    if a > 0:
        A0 = Poly(fld, [fld.zero()] * a + [fld.one()])
        B0 = Poly(fld, [fld.lift_residue(x) for x in hbar[a:]])
        A, B = hensel_factor(work, A0, B0, want_prec)
        parts[0] = unscale(A)
        work = B
    if work.degree > 0:
        wbar = rf.poly_trim([residue(cf) for cf in _integralize(work).coeffs])
        work = _integralize(work)
        bb = len(wbar) - 1
        deficit = work.degree - bb
        if deficit == 0:
            parts[1] = unscale(work)
        elif bb == 0:
            parts[2] = unscale(work)
        else:
            wr = _integralize(work.reverse())
            rbar = rf.poly_trim([residue(cf) for cf in wr.coeffs])
            A0 = Poly(fld, [fld.zero()] * deficit + [fld.one()])
            B0 = Poly(fld, [fld.lift_residue(x) for x in rbar[deficit:]])
            A, B = hensel_factor(wr, A0, B0, want_prec)
            parts[2] = unscale(A.reverse().monic())
            parts[1] = unscale(B.reverse().monic())
    return parts


# ---------------------------------------------------------------------------
# power transform
# ---------------------------------------------------------------------------


def power_transform(g: Poly, e: int, c: FieldElt) -> Poly:
    """Monic polynomial whose roots are z^e / c over the roots of g, computed
    through power sums (Newton's identities) within the coefficient field."""
    fld = g.field
    gm = g.monic()
    n = gm.degree
    a = [gm[n - i] for i in range(n + 1)]  # a[i] = coeff of z^(n-i)
    total = e * n
    p = [fld.zero()] * (total + 1)
    for k in range(1, total + 1):
        acc = fld.zero()
        for i in range(1, min(k, n) + 1):
            acc = acc + a[i] * p[k - i]
        if k <= n:
            acc = acc + k * a[k]
        p[k] = -acc
    cinv = c.inverse()
    t = [fld.zero()] * (n + 1)
    for j in range(1, n + 1):
        t[j] = p[e * j] * cinv ** j
    b = [fld.one()] + [fld.zero()] * n
    for k in range(1, n + 1):
        acc = t[k]
        for i in range(1, k):
            acc = acc + b[i] * t[k - i]
        b[k] = acc * Fraction(-1, k)
    return Poly(fld, [b[n - i] for i in range(n + 1)])


# ---------------------------------------------------------------------------
# the root finder
# ---------------------------------------------------------------------------


@dataclass
class RootRec:
    """One representative root: its host tower, value, multiplicity in the
    original polynomial, and how many roots the record stands for."""

    host: LocalField
    value: FieldElt
    multiplicity: int
    orbit_size: int


def roots(poly, p_or_field, want_prec=None, degree_cap=None):
    """All roots of an exact rational polynomial over Q_p, as RootRecs.

    `poly` is an ascending coefficient list of exact rationals (or a Poly over
    the base field).  Non-squarefree input is reduced via squarefree_part and
    multiplicities recorded.  Every record satisfies
    val(poly_squarefree(value)) >= want_prec, and orbit sizes sum to the
    squarefree degree.
    """
    if isinstance(p_or_field, LocalField):
        base = p_or_field
        if degree_cap is not None and base.degree_cap is None:
            base = LocalField(base.p, degree_cap=degree_cap)
    else:
        base = LocalField(p_or_field, degree_cap=degree_cap)
    if isinstance(poly, Poly):
        coeffs = []
        for c in poly.coeffs:
            if isinstance(c.data, tuple):
                raise ValueError("roots() expects a base-field polynomial")
            coeffs.append(Fraction(c.data))
    else:
        coeffs = [Fraction(c) for c in poly]
    coeffs = q_trim(coeffs)
    if len(coeffs) <= 1:
        return []
    sf, pieces = squarefree_part(coeffs)
    want = Fraction(want_prec) if want_prec is not None else Fraction(24)

    def mult_of(value: FieldElt) -> int:
        if not pieces:
            return 1
        best_m, best_v = 1, None
        for piece, m in pieces.items():
            v = Poly.from_rationals(value.field, list(piece))(value).val_repr()
            if best_v is None or (not v.is_infinite and not best_v.is_infinite
                                  and v.finite > best_v.finite) or v.is_infinite:
                best_m, best_v = m, v
        return best_m

    work = want
    last_exc = None
    for _ in range(6):
        try:
            g = Poly.from_rationals(base, sf)
            recs = _factor_all(g, work, 0)
            out = []
            for value, weight in recs:
                value = hensel_root(Poly.from_rationals(value.field, sf), value, want)
                out.append(RootRec(value.field, value, mult_of(value), weight))
            if sum(r.orbit_size for r in out) != len(sf) - 1:
                raise PrecisionLoss(ValQ(work))
            return out
        except PrecisionLoss as exc:
            last_exc = exc
            work *= 2
    raise last_exc


_MAX_DEPTH = 40
_MAX_WILD = 5


def _factor_all(g: Poly, prec: Fraction, depth: int, wild: int = 0):
    """(value, weight) records covering every root of g; weights sum to deg g."""
    if depth > _MAX_DEPTH or wild > _MAX_WILD:
        raise FactoringDepthError("wild refinement exceeded its depth guard")
    fld = g.field
    if g.degree <= 0:
        return []
    out = []
    if g.coeffs[0].val_repr().is_infinite and g.coeffs[0].prec.is_infinite:
        out.append((fld.zero(), 1))
        g = g.strip_low(1)
        if g.degree <= 0:
            return out
    c0 = g.coeffs[0]
    if not c0.prec.is_infinite and c0.val_repr() >= c0.prec:
        # a root indistinguishable from 0 at this precision (the polynomial is
        # an approximate factor); record it as 0 at the known depth and peel
        c1 = g.coeffs[1]
        v1 = c1.val_repr()
        if c1.prec.is_infinite or v1 < c1.prec:
            if v1.is_infinite:
                raise PrecisionLoss(c0.prec)
            seed = FieldElt(fld, fld.zero().data, c0.prec - v1)
            out.append((seed, 1))
            g = g.strip_low(1)
            if g.degree <= 0:
                return out
        else:
            raise PrecisionLoss(c0.prec)
    if g.degree == 1:
        gm = g.monic()
        out.append((-gm.coeffs[0], 1))
        return out

    segs = newton_polygon(g)

    # 1. generalized Eisenstein: adjoin the polynomial's own root
    if len(segs) == 1:
        v = -segs[0].slope
        h = v * fld.e * g.degree
        if h.denominator == 1 and h != 0 and gcd(abs(int(h)), g.degree) == 1:
            gm = g.monic().reduce_mod(prec + abs(v) * g.degree + 4)
            ext = fld.adjoin_ramified(gm.coeffs)
            out.append((ext.gen(), g.degree))
            return out

    # 2. isolate slope groups separated by value-group thresholds
    if len(segs) > 1:
        vals = sorted({-s.slope for s in segs}, reverse=True)
        for i in range(len(vals) - 1):
            c = _lattice_between(vals[i + 1], vals[i], fld.e)
            if c is None:
                continue
            parts = split_at(g, c, prec + abs(c) * g.degree + 4)
            live = [p for p in parts if p is not None and p.degree > 0]
            if len(live) >= 2:
                for part in live:
                    out.extend(_factor_all(part, prec, depth + 1, wild))
                return out

    seg = segs[0]
    v = -seg.slope
    ve = v * fld.e
    e = ve.denominator
    h = ve.numerator

    if e == 1:
        return out + _slope_in_group(g, v, prec, depth, wild)
    if e % fld.p != 0:
        return out + _tame_step(g, v, e, h, prec, depth, wild)
    return out + _wild_step(g, v, e, h, prec, depth, wild)


def _lattice_between(lo: Fraction, hi: Fraction, e: int):
    """A value-group point strictly inside (lo, hi), else an on-lattice
    endpoint (splitting there still separates), else None."""
    k_lo, k_hi = lo * e, hi * e
    k = k_hi.numerator // k_hi.denominator
    if Fraction(k) == k_hi:
        k -= 1
    if Fraction(k) > k_lo:
        return Fraction(k, e)
    if k_hi.denominator == 1:
        return Fraction(int(k_hi), e)
    if k_lo.denominator == 1:
        return Fraction(int(k_lo), e)
    return None


def _slope_in_group(g: Poly, v: Fraction, prec: Fraction, depth: int, wild: int = 0):
    """Single slope group, v in the value group: scale to slope zero, dispatch
    on the residual factorization."""
    fld = g.field
    s = fld.uniformizer() ** int(v * fld.e)
    hpoly = _integralize(g.scale(s))
    kres = fld.residue_field
    red = rf.poly_trim([residue(c) for c in hpoly.coeffs])
    a = 0
    while a < len(red) and not red[a]:
        a += 1
    resid = red[a:]
    _, facs = rf.factor(resid, kres)
    w_prec = prec + max(Fraction(0), -v) + 2
    out = []
    for mbar, mult in facs:
        r = len(mbar) - 1
        if r == 0:
            continue
        if mult == 1 and r == 1:
            x0 = fld.lift_residue(-mbar[0])
            root_w = hensel_root(hpoly, x0, w_prec)
            out.append((root_w * s, 1))
        elif mult == 1:
            ext = fld.adjoin_unramified([fld.lift_residue(c) for c in mbar])
            root_w = hensel_root(hpoly.lift_to(ext), ext.gen(), w_prec)
            out.append((root_w * s.lift_to(ext), r))
        else:
            if r >= 2:
                ext = fld.adjoin_unramified([fld.lift_residue(c) for c in mbar])
                u = ext.gen()
            else:
                ext = fld
                u = fld.lift_residue(-mbar[0])
            hp = hpoly.lift_to(ext) if ext is not fld else hpoly
            s_ext = s.lift_to(ext) if ext is not fld else s
            cluster = split_at(hp.shift(u), Fraction(0), prec + 4)[0]
            if cluster is None or cluster.degree == 0:
                raise PrecisionLoss(ValQ(prec))
            subs = _factor_all(cluster, prec, depth + 1, wild)
            wsum = 0
            for val_w, wt in subs:
                u2 = u.lift_to(val_w.field) if val_w.field is not ext else u
                s2 = s_ext.lift_to(val_w.field) if val_w.field is not ext else s_ext
                out.append(((val_w + u2) * s2, wt * r))
                wsum += wt
            if wsum != mult:
                raise PrecisionLoss(ValQ(prec))
    return out


def _tame_step(g: Poly, v: Fraction, e: int, h: int, prec: Fraction, depth: int, wild: int = 0):
    """Fractional slope with index prime to p: adjoin an Eisenstein step built
    from a residual root (tame steps land in the right field) and re-run."""
    fld = g.field
    resid = _segment_residual(g, v, e)
    _, facs = rf.factor(resid, fld.residue_field)
    mbar = facs[0][0]
    if len(mbar) - 1 >= 2:
        ext = fld.adjoin_unramified([fld.lift_residue(c) for c in mbar])
        return _factor_all(g.lift_to(ext), prec, depth + 1, wild)
    u = fld.lift_residue(-mbar[0])
    pi = fld.uniformizer()
    modulus = [-(pi ** h) * u] + [fld.zero()] * (e - 1) + [fld.one()]
    ext = fld.adjoin_ramified(modulus)
    return _factor_all(g.lift_to(ext), prec, depth + 1, wild)


def _wild_step(g: Poly, v: Fraction, e: int, h: int, prec: Fraction, depth: int, wild: int = 0):
    """Fractional slope with p | index: refine the segment's unit data through
    the power transform y = z^e/pi^h, then adjoin from the refined data so the
    adjoined field is correct (Krasner)."""
    fld = g.field
    pi = fld.uniformizer()
    c = pi ** h
    G = power_transform(g, e, c)
    g0 = split_at(G, Fraction(0), prec * e + abs(Fraction(h, fld.e)) * G.degree + 8)[1]
    if g0 is None or g0.degree == 0:
        raise PrecisionLoss(ValQ(prec))
    yrecs = _factor_all(g0, prec * e + 4, depth + 1, wild + 1)
    if not yrecs:
        raise PrecisionLoss(ValQ(prec))
    ystar, _ = yrecs[0]
    yfld = ystar.field
    if (v * yfld.e).denominator < e:
        # the y-refinement supplied ramification; the index dropped, re-run
        return _factor_all(g.lift_to(yfld), prec, depth + 1, wild)
    # no new ramification: adjoin x^e - pi^h * y*; a deep y* makes the complete
    # field contain a principal e-th root matching one cluster root
    modulus = [-(c.lift_to(yfld) * ystar)] + [yfld.zero()] * (e - 1) + [yfld.one()]
    ext = yfld.adjoin_ramified(modulus)
    return _factor_all(g.lift_to(ext), prec, depth + 1, wild)


def _segment_residual(g: Poly, v: Fraction, e: int):
    """Residual polynomial of the slope -v segment read off its stride-e
    lattice points, over the residue field."""
    fld = g.field
    vals = [c.val_repr() for c in g.coeffs]
    best = None
    for i, w in enumerate(vals):
        if w.is_infinite:
            continue
        key = w.finite + v * i
        if best is None or key < best[0]:
            best = (key, i, i)
        elif key == best[0]:
            best = (key, min(best[1], i), max(best[2], i))
    _, i0, i1 = best
    L = i1 - i0
    assert L % e == 0
    pi = fld.uniformizer()
    kres = fld.residue_field
    out = []
    base_val = vals[i0].finite
    for j in range(L // e + 1):
        idx = i0 + j * e
        height = base_val - v * j * e
        cf = g.coeffs[idx]
        w = cf.val_repr()
        if w.is_infinite or w.finite > height:
            out.append(kres.zero())
        else:
            out.append(residue(cf * pi ** (-int(height * fld.e))))
    return rf.poly_trim(out)
