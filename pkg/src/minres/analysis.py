"""End-to-end minimization of the resultant-order function over the Berkovich
line: scan the paths from the finite fixed points and the preimages of
a = phi(infinity) up to infinity, minimize the piecewise-affine restriction on
each, collate the argmin set into a point or a segment, decide potential good
reduction, and produce a coordinate change realizing the minimum.

Also houses the degree-1 classification (path / strong tube / horodisc) and
the perturbation-stability thresholds that drive the default working
precision (cap ceil(f(d) * R0) + 2, escalated geometrically on a precision
signal).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .padic import (
    INF,
    ExtensionCapError,
    FieldElt,
    LocalField,
    PrecisionLoss,
    ValQ,
    elt_val,
    ordp,
    vmin,
)
from .polyroots import (
    Poly,
    RootRec,
    _factor_all,
    newton_polygon as _np,
    q_mul,
    q_trim,
    roots,
    squarefree_part,
)
from .dynrep import (
    DegenerateMapError,
    Direction,
    HomogPair,
    MobiusMap,
    TypeIIPoint,
    classify_direction,
    conjugate,
    good_reduction_check,
    normalize,
    ordres,
    ordres_at,
    path_function,
    rho_to_gauss,
    same_point,
    translate,
)
from .pwl import PWLFunc, evaluate as pwl_evaluate, minimize as pwl_minimize


@dataclass
class AnalyzeConfig:
    precision: Fraction | None = None       # None: ceil(f(d) R0) + 2
    max_ext_degree: int | None = None       # None: (d+1)^2
    rebase_at: Fraction | None = None       # tree base a'; None: phi(infinity)


@dataclass
class Locus:
    """Where the minimum is attained.

    kind: point | segment | everything | path | strong_tube | horodisc.
    anchors: the type II point(s) for point/segment kinds.
    endpoints: type I data for degree-1 kinds (fixed points).
    radius: tube radius, or the horodisc codiameter exponent log_p(codiam).
    """

    kind: str
    anchors: tuple = ()
    endpoints: tuple = ()
    radius: Fraction | None = None


@dataclass
class PathData:
    root_id: int
    center: object
    host: LocalField
    chi: PWLFunc
    min_value: Fraction
    argmin_t: tuple
    orbit_size: int = 1


@dataclass
class MinResReport:
    degree: int
    prime: int
    ordres_at_gauss: Fraction
    min_value: Fraction
    locus: Locus
    gamma: MobiusMap
    extension_degree: int
    pgr: bool
    per_path: list = dc_field(default_factory=list)
    hv_min: Fraction | None = None
    hv_gamma: MobiusMap | None = None
    hv_absolute: bool | None = None
    trace: list | None = None


def stability_f(d: int) -> Fraction:
    """The perturbation threshold factor (2d^2+3d-1)/(2d^2-2d)."""
    return Fraction(2 * d * d + 3 * d - 1, 2 * d * d - 2 * d)


def stability_bounds(R, d: int, M):
    """Precision thresholds: exceeding the first preserves all values within
    path distance M of the base point; exceeding the second preserves the
    whole minimal locus.  (eval_threshold, minres_threshold)."""
    R = Fraction(R if not isinstance(R, ValQ) else R.finite)
    M = Fraction(M)
    eval_threshold = max(R, Fraction(R + (d * d + d) * M, 2 * d))
    return eval_threshold, stability_f(d) * R


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# path analysis
# ---------------------------------------------------------------------------


def _anchored_chi(pair: HomogPair, alpha, R0: Fraction):
    """Translate the normalized rational pair to the root alpha, normalize by
    valuation shift, and return (chi, R_anchor, min coefficient valuation).

    An ambiguous coefficient is dropped as zero only when its precision
    clears the stability threshold for this anchor; otherwise the signal
    propagates so the driver can escalate.
    """
    d = pair.d
    moved = translate(pair, alpha)
    vals = []
    precs = []
    for c in moved.a + moved.b:
        if isinstance(c, FieldElt):
            vals.append(c.val_repr())
            precs.append(c.prec)
        else:
            vals.append(ordp(c, pair.p))
            precs.append(INF)
    m = INF
    for v, pr in zip(vals, precs):
        m = vmin(m, vmin(v, pr))
    if m.is_infinite:
        raise DegenerateMapError("zero pair after translation")
    m = m.finite
    R_anchor = R0 - 2 * d * m
    threshold = stability_f(d) * max(R_anchor, Fraction(0))
    terms = []
    for idx, (v, pr) in enumerate(zip(vals, precs)):
        ell = d - (idx % (d + 1))
        shift = 0 if idx <= d else 1
        if not pr.is_infinite and v >= pr:
            if pr.finite - m <= threshold:
                raise PrecisionLoss(pr)
            continue  # indistinguishable from zero, safely dropped
        if v.is_infinite:
            continue
        slope = d * d + d - 2 * d * (ell + shift)
        terms.append((slope, R_anchor - 2 * d * (v.finite - m)))
    return PWLFunc(terms), R_anchor, m


def _as_point(alpha, t: Fraction) -> TypeIIPoint:
    return TypeIIPoint(alpha, -t)


def _host_of(alpha):
    return alpha.field if isinstance(alpha, FieldElt) else None


def _canonical_center(alpha, s: Fraction):
    """Replace a center within the radius by 0; otherwise keep it at full
    precision (truncating to the radius would starve later evaluations)."""
    if isinstance(alpha, FieldElt):
        v = alpha.val_repr()
        if v.is_infinite or v.finite >= -s:
            return alpha.field.zero()
    return alpha


def analyze(phi: HomogPair, p: int | None = None, config: AnalyzeConfig | None = None) -> MinResReport:
    """Full minimization for degree >= 2 over exact rationals.

    Finds the distinct finite fixed points and preimages of the base value,
    minimizes the path restriction anchored at each, takes the global minimum,
    assembles the locus, and anchors a coordinate change at one endpoint.
    """
    config = config or AnalyzeConfig()
    if p is not None and p != phi.p:
        raise ValueError("prime mismatch")
    p = phi.p
    d = phi.d
    if d < 2:
        raise ValueError("analyze needs degree >= 2; use classify_mobius for degree 1")
    pair, _ = normalize(phi)
    R0v = ordres(pair)
    R0 = R0v.finite
    max_ext = config.max_ext_degree or (d + 1) ** 2

    # endpoints of the scanned tree: finite fixed points and preimages;
    # the fixed-point polynomial is f(z) - z g(z)
    fz = [Fraction(c) for c in reversed(pair.a)]
    gz = [Fraction(c) for c in reversed(pair.b)]
    zg = [Fraction(0)] + gz
    n = max(len(fz), len(zg))
    fixpoly = q_trim([ (fz[i] if i < len(fz) else Fraction(0)) - (zg[i] if i < len(zg) else Fraction(0)) for i in range(n) ])
    if config.rebase_at is None:
        base_at_infinity = pair.b[0] == 0  # phi(infinity) = a_d / b_d
        if base_at_infinity:
            prepoly = q_trim(gz)
        else:
            aval = Fraction(pair.a[0]) / Fraction(pair.b[0])
            prepoly = q_trim([fc - aval * gc for fc, gc in
                              ((fz[i] if i < len(fz) else Fraction(0),
                                gz[i] if i < len(gz) else Fraction(0))
                               for i in range(max(len(fz), len(gz))))])
    else:
        aval = Fraction(config.rebase_at)
        prepoly = q_trim([(fz[i] if i < len(fz) else Fraction(0)) - aval * (gz[i] if i < len(gz) else Fraction(0))
                          for i in range(max(len(fz), len(gz)))])
    if not fixpoly:
        raise DegenerateMapError("identically fixed map")
    root_poly = q_mul(fixpoly, prepoly) if len(prepoly) > 1 else fixpoly
    root_sf, _ = squarefree_part(root_poly)

    if config.precision is not None:
        want0 = Fraction(config.precision)
    else:
        # the anchored value R_i = R0 - 2d*m_i grows with the root size, so
        # seed the working precision with a polygon-derived bound on it and
        # on the precision lost raising roots to the d-th power; geometric
        # escalation still backs this up
        vmax = Fraction(0)
        if len(root_sf) > 2:
            base = LocalField(pair.p)
            for seg in _np(Poly.from_rationals(base, root_sf)):
                vmax = max(vmax, abs(seg.slope))
        bound_Ri = R0 + 2 * d * d * vmax
        want0 = stability_f(d) * bound_Ri + d * vmax + 4
    want = Fraction(max(want0, 4))
    last = None
    for _ in range(7):
        try:
            return _analyze_at_precision(pair, R0, root_sf, want, max_ext, config)
        except PrecisionLoss as exc:
            last = exc
            want *= 2
    raise last


def _analyze_at_precision(pair, R0, root_sf, want, max_ext, config):
    p = pair.p
    d = pair.d
    recs = roots(root_sf, p, want_prec=want, degree_cap=max_ext)
    per_path = []
    for idx, rec in enumerate(recs):
        chi, R_i, _ = _anchored_chi(pair, rec.value, R0)
        mval, (t_lo, t_hi) = pwl_minimize(chi)
        per_path.append(PathData(idx, rec.value, rec.host, chi, mval, (t_lo, t_hi), rec.orbit_size))
    M = min(pd.min_value for pd in per_path)
    pgr = M == 0
    attaining = [pd for pd in per_path if pd.min_value == M]

    # locus assembly: each argmin [t_lo, t_hi] is the arc s in [-t_hi, -t_lo]
    # of the path anchored at the record's center
    def upper(pd):
        return -pd.argmin_t[0]

    def lower(pd):
        return -pd.argmin_t[1]

    lead = max(attaining, key=lambda pd: (upper(pd), -lower(pd)))
    s_lo, s_hi = lower(lead), upper(lead)
    if s_lo == s_hi:
        locus = Locus("point", (TypeIIPoint(_canonical_center(lead.center, s_lo), s_lo),))
        endpoints = [(lead.center, s_lo)]
    else:
        if d % 2 == 0:
            raise AssertionError("even degree cannot attain its minimum on a segment")
        second = _second_leg(pair, root_sf, lead, M, R0, want)
        if second is None:
            anchors = (
                TypeIIPoint(_canonical_center(lead.center, s_lo), s_lo),
                TypeIIPoint(_canonical_center(lead.center, s_hi), s_hi),
            )
            endpoints = [(lead.center, s_lo), (lead.center, s_hi)]
        else:
            beta, s2_lo = second
            anchors = (
                TypeIIPoint(_canonical_center(lead.center, s_lo), s_lo),
                TypeIIPoint(_canonical_center(beta, s2_lo), s2_lo),
            )
            endpoints = [(lead.center, s_lo), (beta, s2_lo)]
        locus = Locus("segment", anchors)
    if pgr and locus.kind != "point":
        raise AssertionError("minimum 0 must be attained at a single point")

    # anchor the coordinate change at a locus endpoint (identity when the
    # base point itself attains the minimum)
    if M == R0:
        gamma = MobiusMap.identity()
        ext_degree = 1
    else:
        center, s = endpoints[0]
        gamma, ext_degree = _gamma_at(center, s, p, max_ext)
    if ext_degree > max_ext:
        raise ExtensionCapError(f"{ext_degree} > {max_ext}")

    report = MinResReport(
        degree=d,
        prime=p,
        ordres_at_gauss=R0,
        min_value=M,
        locus=locus,
        gamma=gamma,
        extension_degree=ext_degree,
        pgr=pgr,
        per_path=per_path,
    )
    return report


def _second_leg(pair, root_sf, lead, M, R0, want):
    """Look for a second locus leg descending from the top node: a root beta
    at distance exactly p^{s_hi} from the lead anchor whose own path attains M
    on an arc reaching below the node."""
    s_hi = -lead.argmin_t[0]
    s_lo = -lead.argmin_t[1]
    alpha = lead.center
    host = _host_of(alpha) or LocalField(pair.p)
    alpha_e = alpha if isinstance(alpha, FieldElt) else host.embed(alpha)
    S = Poly.from_rationals(host, root_sf).shift(alpha_e)
    try:
        cands = _factor_all(S, want, 0)
    except PrecisionLoss:
        raise
    best = None
    for delta, _w in cands:
        dv = delta.val_repr()
        if dv.is_infinite or dv.finite != -s_hi:
            continue
        beta = alpha_e.lift_to(delta.field) + delta if delta.field is not alpha_e.field else alpha_e + delta
        chi, R_b, _ = _anchored_chi(pair, beta, R0)
        mv, (t_lo, t_hi) = pwl_minimize(chi)
        if mv != M:
            continue
        if -t_lo != s_hi:
            continue
        cand_lo = -t_hi
        if cand_lo >= s_hi:
            continue
        # a genuine second leg must leave the node in a new direction
        if cand_lo >= s_lo and same_point(
            TypeIIPoint(beta, cand_lo), TypeIIPoint(alpha_e.lift_to(beta.field) if beta.field is not alpha_e.field else alpha_e, cand_lo)
        ):
            continue
        if best is None or cand_lo < best[1]:
            best = (beta, cand_lo)
    return best


def _gamma_at(center, s: Fraction, p: int, max_ext: int):
    """The upper-triangular change [[A, center], [0, 1]] with ord(A) = -s,
    over the smallest tower that carries it."""
    host = _host_of(center)
    if host is None and s.denominator == 1:
        A = Fraction(p) ** int(-s)
        return MobiusMap(A, Fraction(center), Fraction(0), Fraction(1)), 1
    fld = host or LocalField(p, degree_cap=max_ext)
    k = s * fld.e
    if k.denominator != 1:
        pi = fld.uniformizer()
        fld = fld.adjoin_ramified([-pi] + [fld.zero()] * (k.denominator - 1) + [fld.one()])
        k = s * fld.e
    A = fld.uniformizer() ** int(-k)
    c = fld.coerce(center)
    return MobiusMap(A, c, fld.zero(), fld.one()), fld.degree


# ---------------------------------------------------------------------------
# degree 1
# ---------------------------------------------------------------------------


def classify_mobius(phi: HomogPair, p: int | None = None) -> MinResReport:
    """Degree-1 classification by the eigenvalues of the coefficient matrix:
    identity (everything), two fixed points (path or strong tube), or one
    fixed point (horodisc)."""
    if phi.d != 1:
        raise ValueError("classify_mobius needs degree 1")
    p = phi.p
    a1, a0 = Fraction(phi.a[0]), Fraction(phi.a[1])
    b1, b0 = Fraction(phi.b[0]), Fraction(phi.b[1])
    det = a1 * b0 - a0 * b1
    if det == 0:
        raise DegenerateMapError("singular coefficient matrix")
    R0 = ordres(normalize(phi)[0]).finite

    if a0 == 0 and b1 == 0 and a1 == b0:
        locus = Locus("everything")
        return MinResReport(1, p, R0, Fraction(0), locus, MobiusMap.identity(), 1, True)

    tr = a1 + b0
    disc = tr * tr - 4 * det
    fixpoly = q_trim([a0, a1 - b0, -b1])  # f - z g

    if disc == 0:
        # one fixed point: normal form z + C with C = 1/lambda
        lam = tr / 2
        C = 1 / lam
        x0, gpar = _parabolic_data(a1, a0, b1, b0, C, p)
        # send the base point into the horodisc: compose with diag(C, 1)
        scale = MobiusMap(Fraction(C), Fraction(0), Fraction(0), Fraction(1))
        gamma = _compose(gpar, scale)
        codiam_exp = -ordp(C, p).finite
        locus = Locus("horodisc", endpoints=(x0,), radius=codiam_exp)
        return MinResReport(1, p, R0, Fraction(0), locus, gamma, 1, True)

    # two fixed points; eigenvalue valuations off the characteristic polygon
    vtr = ordp(tr, p)
    vdet = ordp(det, p).finite
    vdisc = ordp(disc, p).finite
    if not vtr.is_infinite and 2 * vtr.finite < vdet:
        ord_lam, ord_mu = vdet - vtr.finite, vtr.finite
    else:
        ord_lam = ord_mu = Fraction(vdet, 2)
    ordC = ord_lam - ord_mu  # |lambda| <= |mu|
    ordC1 = Fraction(vdisc, 2) - ord_mu  # ord(C - 1) = ord(lambda - mu) - ord(mu)
    minval = Fraction(ordC)
    pgr = minval == 0
    x_ends, gamma, ext_deg = _two_fixed_data(fixpoly, b1, p)
    if ordC > 0 or ordC1 == 0:
        locus = Locus("path", endpoints=tuple(x_ends))
    else:
        locus = Locus("strong_tube", endpoints=tuple(x_ends), radius=ordC1)
    return MinResReport(1, p, R0, minval, locus, gamma, ext_deg, pgr)


def _two_fixed_data(fixpoly, b1, p):
    """Fixed points of a two-fixed-point degree-1 map and a coordinate change
    sending 0, infinity to them."""
    ends = []
    if len(fixpoly) - 1 < 2:
        ends.append("inf")  # infinity is a fixed point
    recs = roots(fixpoly, p, want_prec=12) if len(fixpoly) > 1 else []
    for r in recs:
        if r.host.degree == 1:
            ends.append(Fraction(r.value.data))
        elif r.orbit_size == 2:
            # the conjugate root lies in the same quadratic host:
            # it is (sum of roots) - value
            sum_roots = -Fraction(fixpoly[1]) / Fraction(fixpoly[2])
            ends.append(r.value)
            ends.append(r.host.embed(sum_roots) - r.value)
        else:
            ends.append(r.value)
    x0 = ends[0]
    x1 = ends[1] if len(ends) > 1 else "inf"
    # gamma maps 0 -> x0, infinity -> x1
    ext = 1
    if isinstance(x0, FieldElt) or isinstance(x1, FieldElt):
        fld = x0.field if isinstance(x0, FieldElt) else x1.field
        ext = fld.degree
        ex0 = fld.coerce(x0) if not isinstance(x0, str) else None
        ex1 = fld.coerce(x1) if not isinstance(x1, str) else None
        if x1 == "inf":
            gamma = MobiusMap(fld.one(), ex0, fld.zero(), fld.one())
        elif x0 == "inf":
            gamma = MobiusMap(ex1, fld.one(), fld.one(), fld.zero())
        else:
            gamma = MobiusMap(ex1, ex0, fld.one(), fld.one())
    else:
        if x1 == "inf":
            gamma = MobiusMap(Fraction(1), Fraction(x0), Fraction(0), Fraction(1))
        elif x0 == "inf":
            gamma = MobiusMap(Fraction(x1), Fraction(1), Fraction(1), Fraction(0))
        else:
            gamma = MobiusMap(Fraction(x1), Fraction(x0), Fraction(1), Fraction(1))
    return [x0, x1], gamma, ext


def _parabolic_data(a1, a0, b1, b0, C, p):
    """Unique fixed point and a change of coordinates for the one-fixed-point
    case."""
    if b1 == 0:
        # phi(z) = (a1 z + a0)/b0 with a1 == b0: already z + C
        return "inf", MobiusMap.identity()
    x0 = (a1 - b0) / (2 * b1)
    gamma = MobiusMap(Fraction(x0), Fraction(1), Fraction(1), Fraction(0))
    return Fraction(x0), gamma


def _compose(g1: MobiusMap, g2: MobiusMap) -> MobiusMap:
    """Matrix product g1 * g2."""
    return MobiusMap(
        g1.A * g2.A + g1.B * g2.C,
        g1.A * g2.B + g1.B * g2.D,
        g1.C * g2.A + g1.D * g2.C,
        g1.C * g2.B + g1.D * g2.D,
    )
