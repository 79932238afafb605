"""Steepest descent over the p-rational type II points: find the minimum of
the resultant-order function over points with rational center and integer
radius exponent, a rational coordinate change achieving it, and whether that
minimum is also the absolute one.

The walk starts at the base point, first ascends toward infinity while the
function decreases that way, then repeatedly steps down into the unique
decreasing residue direction.  Each leg minimizes the exact piecewise-affine
restriction; an argmin without integers brackets the rational optimum between
two integers and settles the absolute-minimum flag.  All arithmetic is on
exact integers reduced modulo p^N, N from the perturbation-stability
thresholds, so coefficients stay bounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd

from .analysis import _ceil, _compose, stability_f
from .dynrep import DegenerateMapError, HomogPair, MobiusMap, normalize, ordres
from .padic import ordp
from .pwl import PWLFunc, evaluate as pwl_evaluate, minimize as pwl_minimize


class DescentError(RuntimeError):
    """The walk exceeded its theoretical step bound (a bug, not bad input)."""


@dataclass
class BStep:
    direction: object      # None for the infinity direction, else the lift beta
    t: int                 # integer path parameter chosen on this leg
    r_after: Fraction


@dataclass
class BReport:
    hv_min: Fraction
    gamma: MobiusMap
    absolute: bool
    trace: list = dc_field(default_factory=list)
    center: Fraction = Fraction(0)
    s: Fraction = Fraction(0)


@dataclass
class DescendConfig:
    precision: int | None = None
    residue_cap: int = 65536


def _ordp_int(n: int, p: int):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _chi(a, b, d, p, R):
    """Path-restriction terms of an integer pair with min ord 0; coefficients
    that vanished modulo the working precision drop out."""
    terms = []
    for ell in range(d + 1):
        for coeffs, shift in ((a, 0), (b, 1)):
            v = _ordp_int(coeffs[d - ell], p)
            if v is None:
                continue
            terms.append((d * d + d - 2 * d * (ell + shift), R - 2 * d * v))
    return PWLFunc(terms)


def _pick_inside(lo: Fraction, hi: Fraction):
    """Integer inside [lo, hi] with the smallest |k|, then the smaller k."""
    m = -((-lo.numerator) // lo.denominator)  # ceil(lo)
    n = hi.numerator // hi.denominator        # floor(hi)
    if m > n:
        return None
    if m <= 0 <= n:
        return 0
    return m if m > 0 else n


def _pick_bracket(chi, lo: Fraction, hi: Fraction):
    """The better of the two integers bracketing an integer-free [lo, hi];
    ties go to the smaller |k|, then the smaller k."""
    m = lo.numerator // lo.denominator        # floor
    n = m + 1
    vm, vn = pwl_evaluate(chi, m), pwl_evaluate(chi, n)
    if vm < vn:
        return m, vm
    if vn < vm:
        return n, vn
    k = min((abs(m), m), (abs(n), n))[1]
    return k, vm


def _normalize_ints(a, b, p, cap):
    """Divide out the common p-power, then reduce modulo p^cap."""
    vmin_ = None
    for c in a + b:
        v = _ordp_int(c, p)
        if v is not None:
            vmin_ = v if vmin_ is None else min(vmin_, v)
    if vmin_ is None:
        raise DegenerateMapError("zero pair")
    pk = p ** vmin_
    mod = p ** cap
    return tuple((c // pk) % mod for c in a), tuple((c // pk) % mod for c in b)


def _decreasing_at_infinity(a, b, d, p) -> bool:
    for ell in range(d + 1):
        if 2 * ell >= d + 1 and a[d - ell] % p != 0:
            return False
        if 2 * ell >= d - 1 and b[d - ell] % p != 0:
            return False
    return True


def _eval_mod(coeffs_asc, x, p):
    acc = 0
    for c in reversed(coeffs_asc):
        acc = (acc * x + c) % p
    return acc


def _translate_ints(a, b, d, beta):
    """(F(X+bY, Y) - b G(X+bY, Y), G(X+bY, Y)) on exact integers."""

    def shift(coeffs):
        out = [0] * (d + 1)
        for idx in range(d + 1):
            ell = d - idx
            c = coeffs[idx]
            if c == 0:
                continue
            for j in range(ell + 1):
                out[d - j] += c * comb(ell, j) * beta ** (ell - j)
        return out

    fa = shift(list(a))
    fb = shift(list(b))
    return tuple(x - beta * y for x, y in zip(fa, fb)), tuple(fb)


def _descent_direction(a, b, d, p):
    """First residue lift (ascending order) in which the function decreases:
    a common residue root of the denominator and the fixed-point polynomial
    whose translated pair passes the low-index coefficient test."""
    g_asc = [b[d - ell] for ell in range(d + 1)]
    f_asc = [a[d - ell] for ell in range(d + 1)]
    h_asc = [f_asc[0]] + [f_asc[i] - g_asc[i - 1] for i in range(1, d + 1)] + [-g_asc[d]]
    for beta in range(p):
        if _eval_mod(g_asc, beta, p) != 0 or _eval_mod(h_asc, beta, p) != 0:
            continue
        a_t, b_t = _translate_ints(a, b, d, beta)
        ok = True
        for ell in range(d + 1):
            if 2 * ell <= d + 1 and a_t[d - ell] % p != 0:
                ok = False
                break
            if 2 * ell <= d - 1 and b_t[d - ell] % p != 0:
                ok = False
                break
        if ok:
            return beta, a_t, b_t
    return None


def _step_up(a, b, d, p, k, cap):
    """[[1, 0], [0, p^{-k}]] with k < 0, then renormalize."""
    q = p ** (-k)
    a2 = tuple(a[i] * q ** (i + 1) for i in range(d + 1))
    b2 = tuple(b[i] * q ** i for i in range(d + 1))
    return _normalize_ints(a2, b2, p, cap)


def _step_down(a_t, b_t, d, p, k, cap):
    """After a translation, [[p^k, 0], [0, 1]] with k > 0, then renormalize."""
    q = p ** k
    a2 = tuple(a_t[i] * q ** (d - i) for i in range(d + 1))
    b2 = tuple(b_t[i] * q ** (d - i + 1) for i in range(d + 1))
    return _normalize_ints(a2, b2, p, cap)


def descend(phi: HomogPair, p: int | None = None, config: DescendConfig | None = None) -> BReport:
    """The full walk for a degree >= 2 rational pair."""
    config = config or DescendConfig()
    if p is not None and p != phi.p:
        raise ValueError("prime mismatch")
    p = phi.p
    d = phi.d
    if d < 2:
        raise ValueError("descend needs degree >= 2")
    if p > config.residue_cap:
        raise ValueError("prime exceeds the residue enumeration cap")
    pair, _ = normalize(phi)
    R0 = ordres(pair).finite
    cap = int(config.precision) if config.precision is not None else _ceil(stability_f(d) * R0) + 2
    cap = max(cap, 2)

    den = 1
    for c in pair.a + pair.b:
        den = den * c.denominator // gcd(den, c.denominator)
    assert den % p != 0  # normalized pairs are p-integral
    a = tuple(int(c * den) for c in pair.a)
    b = tuple(int(c * den) for c in pair.b)
    a, b = _normalize_ints(a, b, p, cap)

    R = Fraction(R0)
    gamma = MobiusMap.identity()
    trace = []
    max_steps = int(2 * R0 / (d - 1)) + 4

    def finish(r, gm, absolute):
        A, B, _, D = gm.entries()
        ratio = Fraction(A) / Fraction(D)
        return BReport(
            Fraction(r), gm, absolute, trace,
            Fraction(B) / Fraction(D), -ordp(ratio, p).finite,
        )

    if _decreasing_at_infinity(a, b, d, p):
        chi = _chi(a, b, d, p, R)
        rnew, (lo, hi) = pwl_minimize(chi)
        k = _pick_inside(lo, hi)
        if lo == hi and lo.denominator == 1:
            k = int(lo)
            a, b = _step_up(a, b, d, p, k, cap)
            R = rnew
            gamma = MobiusMap(Fraction(1), Fraction(0), Fraction(0), Fraction(p) ** (-k))
            trace.append(BStep(None, k, R))
        elif k is None:
            k, R = _pick_bracket(chi, lo, hi)
            gamma = MobiusMap(Fraction(1), Fraction(0), Fraction(0), Fraction(p) ** (-k))
            trace.append(BStep(None, k, R))
            return finish(R, gamma, False)
        else:
            gamma = MobiusMap(Fraction(1), Fraction(0), Fraction(0), Fraction(p) ** (-k))
            trace.append(BStep(None, k, rnew))
            return finish(rnew, gamma, True)

    for _ in range(max_steps):
        found = _descent_direction(a, b, d, p)
        if found is None:
            return finish(R, gamma, True)
        beta, a_t, b_t = found
        chi = _chi(a_t, b_t, d, p, R)
        rnew, (lo, hi) = pwl_minimize(chi)
        k = _pick_inside(lo, hi)
        if lo == hi and lo.denominator == 1:
            k = int(lo)
            a, b = _step_down(a_t, b_t, d, p, k, cap)
            R = rnew
            gamma = _compose(gamma, MobiusMap(Fraction(p) ** k, Fraction(beta), Fraction(0), Fraction(1)))
            trace.append(BStep(beta, k, R))
            continue
        if k is None:
            k, R = _pick_bracket(chi, lo, hi)
            gamma = _compose(gamma, MobiusMap(Fraction(p) ** k, Fraction(beta), Fraction(0), Fraction(1)))
            trace.append(BStep(beta, k, R))
            return finish(R, gamma, False)
        gamma = _compose(gamma, MobiusMap(Fraction(p) ** k, Fraction(beta), Fraction(0), Fraction(1)))
        trace.append(BStep(beta, k, rnew))
        return finish(rnew, gamma, True)
    raise DescentError("walk exceeded its step bound")
