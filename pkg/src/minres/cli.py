"""Command-line front end: parse a rational map, run the requested
algorithm(s), and emit text, JSON, or plot-ready CSV of the per-path affine
data.

    minres analyze --phi "(z^3-5)/z^2" --prime 5 [--algorithm a|b|both|auto]
                   [--precision N] [--max-ext-degree K] [--json]
                   [--emit-pwl FILE]
    minres batch --input FILE [--json]

Batch input is one map per line: "<prime> <expression>"; blank lines and
'#' comments are skipped.  Exit codes: 0 success, 2 degenerate or unparsable
input, 3 resource caps (extension degree, precision, refinement depth).
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .analysis import AnalyzeConfig, Locus, MinResReport, analyze, classify_mobius
from .descent import DescendConfig, DescentError, descend
from .dynrep import DegenerateMapError, HomogPair, MobiusMap
from .padic import ExtensionCapError, FieldElt, PrecisionLoss
from .polyroots import FactoringDepthError, q_divmod, q_gcd, q_mul, q_trim, resultant


@dataclass
class RunConfig:
    prime: int
    algorithm: str = "auto"        # a | b | both | auto
    precision: int | None = None
    max_ext_degree: int | None = None
    output: str = "text"           # text | json
    emit_pwl: str | None = None


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# expression parsing: univariate rational expressions in z over Q
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[zZ]|\*\*|[()+\-*/^])")


def _tokenize(src: str):
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            if src[pos:].strip():
                raise ParseError(f"bad token at {src[pos:]!r}")
            break
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _RatFunc:
    """num/den as ascending Fraction coefficient lists."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = q_trim(num)
        self.den = q_trim(den if den is not None else [Fraction(1)])
        if not self.den:
            raise ParseError("division by the zero polynomial")

    def __add__(self, other):
        return _RatFunc(
            [a + b for a, b in _zip(q_mul(self.num, other.den), q_mul(other.num, self.den))],
            q_mul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + _RatFunc([-c for c in other.num], other.den)

    def __mul__(self, other):
        return _RatFunc(q_mul(self.num, other.num), q_mul(self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise ParseError("division by zero")
        return _RatFunc(q_mul(self.num, other.den), q_mul(self.den, other.num))

    def __pow__(self, n: int):
        out = _RatFunc([Fraction(1)])
        base = self
        if n < 0:
            base = _RatFunc(self.den, self.num)
            n = -n
        for _ in range(n):
            out = out * base
        return out


def _zip(f, g):
    n = max(len(f), len(g))
    return [
        ((f[i] if i < len(f) else Fraction(0)), (g[i] if i < len(g) else Fraction(0)))
        for i in range(n)
    ]


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ParseError(f"expected {expect!r}, found {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        node = self.term()
        if sign < 0:
            node = _RatFunc([Fraction(-1)]) * node
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def factor(self):
        if self.peek() == "-":
            self.take()
            return _RatFunc([Fraction(-1)]) * self.factor()
        node = self.base()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be an integer, found {tok!r}")
            node = node ** (-int(tok) if neg else int(tok))
        return node

    def base(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok in ("z", "Z"):
            self.take()
            return _RatFunc([Fraction(0), Fraction(1)])
        if tok is not None and tok.isdigit():
            self.take()
            return _RatFunc([Fraction(int(tok))])
        raise ParseError(f"unexpected token {tok!r}")


_LIST_FORM = re.compile(r"^\s*F\s*=\s*\[(?P<F>[^\]]*)\]\s*;\s*G\s*=\s*\[(?P<G>[^\]]*)\]\s*$")


def parse_map(src: str, p: int = 2) -> HomogPair:
    """A homogeneous pair from "(z^3-5)/z^2"-style expressions or the explicit
    form "F=[a_d,...,a_0];G=[b_d,...,b_0]" (descending coefficients).

    The result has integer coefficients with common content cleared; a zero
    resultant is reported as a degenerate map.
    """
    m = _LIST_FORM.match(src)
    if m:
        try:
            a = [Fraction(t.strip()) for t in m.group("F").split(",")]
            b = [Fraction(t.strip()) for t in m.group("G").split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc))
        if len(a) != len(b):
            raise ParseError("F and G need equal coefficient counts")
        d = len(a) - 1
        num, den = list(reversed(a)), list(reversed(b))
    else:
        parser = _Parser(_tokenize(src))
        rf = parser.expr()
        if parser.peek() is not None:
            raise ParseError(f"trailing input {parser.peek()!r}")
        num, den = rf.num, rf.den
        if not den:
            raise ParseError("zero denominator")
        g = q_gcd(num, den)
        if len(g) > 1:
            num, _ = q_divmod(num, g)
            den, _ = q_divmod(den, g)
        d = max(len(num), len(den)) - 1
    if d < 1:
        raise DegenerateMapError("degenerate map (a common factor leaves degree 0)")
    a_desc = [Fraction(num[ell]) if ell < len(num) else Fraction(0) for ell in range(d, -1, -1)]
    b_desc = [Fraction(den[ell]) if ell < len(den) else Fraction(0) for ell in range(d, -1, -1)]
    # clear common content to primitive integer coefficients
    from math import gcd as _gcd

    denlcm = 1
    for c in a_desc + b_desc:
        denlcm = denlcm * c.denominator // _gcd(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in a_desc + b_desc]
    content = 0
    for c in ints:
        content = _gcd(content, abs(c))
    ints = [c // content for c in ints]
    a_desc = ints[: d + 1]
    b_desc = ints[d + 1:]
    pair = HomogPair(d, a_desc, b_desc, p)
    if resultant(pair.a, pair.b, d) == 0:
        raise DegenerateMapError("degenerate map (zero resultant)")
    return pair


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else f"{x.numerator}"


def _nested(data):
    if isinstance(data, tuple):
        return [_nested(c) for c in data]
    return _frac_str(data)


def _elt_json(x):
    if isinstance(x, FieldElt):
        if not x.field.steps:
            return _frac_str(x.data)
        steps = []
        for s in x.field.steps:
            steps.append({
                "kind": s.kind,
                "degree": s.degree,
                "minpoly": _nested(s.minpoly),
            })
        return {"tower": steps, "coords": _nested(x.data), "prime": x.field.p}
    if isinstance(x, str):
        return x
    return _frac_str(x)


def _gamma_json(g: MobiusMap):
    return [[_elt_json(g.A), _elt_json(g.B)], [_elt_json(g.C), _elt_json(g.D)]]


def _locus_json(locus: Locus):
    out = {"kind": locus.kind}
    out["anchors"] = [
        {"center": _elt_json(a.center), "s": _frac_str(a.s)} for a in locus.anchors
    ]
    if locus.endpoints:
        out["endpoints"] = [_elt_json(e) for e in locus.endpoints]
    if locus.radius is not None:
        out["radius"] = _frac_str(locus.radius)
    return out


def report_json(rep: MinResReport, brep=None) -> dict:
    out = {
        "degree": rep.degree,
        "prime": rep.prime,
        "ordres_at_gauss": _frac_str(rep.ordres_at_gauss),
        "min_value": _frac_str(rep.min_value),
        "locus": _locus_json(rep.locus),
        "gamma": _gamma_json(rep.gamma),
        "extension_degree": rep.extension_degree,
        "potential_good_reduction": rep.pgr,
    }
    if brep is not None:
        out["hv_min"] = _frac_str(brep.hv_min)
        out["hv_gamma"] = _gamma_json(brep.gamma)
        out["hv_absolute"] = brep.absolute
        out["trace"] = [
            {
                "direction": "inf" if st.direction is None else str(st.direction),
                "t": st.t,
                "r_after": _frac_str(st.r_after),
            }
            for st in brep.trace
        ]
    return out


def report_json_b_only(phi, brep) -> dict:
    out = {
        "degree": phi.d,
        "prime": phi.p,
        "hv_min": _frac_str(brep.hv_min),
        "hv_gamma": _gamma_json(brep.gamma),
        "hv_absolute": brep.absolute,
        "trace": [
            {
                "direction": "inf" if st.direction is None else str(st.direction),
                "t": st.t,
                "r_after": _frac_str(st.r_after),
            }
            for st in brep.trace
        ],
    }
    return out


def _render_text(doc: dict) -> str:
    lines = []
    for key in (
        "degree", "prime", "ordres_at_gauss", "min_value", "extension_degree",
        "potential_good_reduction", "hv_min", "hv_absolute",
    ):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    if "locus" in doc:
        loc = doc["locus"]
        lines.append(f"locus: {loc['kind']}")
        for a in loc.get("anchors", []):
            center = a["center"]
            if isinstance(center, dict):
                center = f"<tower deg {_tower_degree(center)} elt>"
            lines.append(f"  anchor: center {center}, s = {a['s']}")
        for e in loc.get("endpoints", []):
            if isinstance(e, dict):
                e = f"<tower deg {_tower_degree(e)} elt>"
            lines.append(f"  endpoint: {e}")
        if "radius" in loc:
            lines.append(f"  radius: {loc['radius']}")
    if "gamma" in doc:
        lines.append(f"gamma: {json.dumps(doc['gamma'])}")
    if "trace" in doc:
        for st in doc["trace"]:
            lines.append(f"  step: dir {st['direction']}, t {st['t']}, R {st['r_after']}")
    return "\n".join(lines)


def _tower_degree(elt: dict) -> int:
    deg = 1
    for s in elt.get("tower", []):
        deg *= s["degree"]
    return deg


def _emit_pwl(path, per_path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["path_id", "root_center", "slope", "intercept_num", "intercept_den"])
        for pd in per_path:
            center = pd.center
            if isinstance(center, FieldElt):
                center = json.dumps(_elt_json(center))
            else:
                center = _frac_str(center)
            for slope, intercept in pd.chi.terms:
                writer.writerow(
                    [pd.root_id, center, slope, intercept.numerator, intercept.denominator]
                )


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


def run(config: RunConfig, src: str):
    """Execute one map; returns (exit_code, rendered_report_string)."""
    try:
        phi = parse_map(src, config.prime)
    except (ParseError, DegenerateMapError) as exc:
        return 2, f"error: {exc}"
    algo = config.algorithm
    if algo == "auto":
        algo = "mobius" if phi.d == 1 else "a"
    if phi.d == 1 and algo in ("a", "b", "both"):
        algo = "mobius"
    try:
        if algo == "mobius":
            rep = classify_mobius(phi)
            doc = report_json(rep)
            per_path = rep.per_path
        elif algo == "a":
            rep = analyze(phi, config=AnalyzeConfig(
                precision=config.precision, max_ext_degree=config.max_ext_degree))
            doc = report_json(rep)
            per_path = rep.per_path
        elif algo == "b":
            brep = descend(phi, config=DescendConfig(precision=config.precision))
            doc = report_json_b_only(phi, brep)
            per_path = []
        elif algo == "both":
            rep = analyze(phi, config=AnalyzeConfig(
                precision=config.precision, max_ext_degree=config.max_ext_degree))
            brep = descend(phi, config=DescendConfig(precision=config.precision))
            doc = report_json(rep, brep)
            per_path = rep.per_path
        else:
            return 2, f"error: unknown algorithm {config.algorithm!r}"
    except DegenerateMapError as exc:
        return 2, f"error: {exc}"
    except (ExtensionCapError, FactoringDepthError, DescentError, PrecisionLoss) as exc:
        return 3, f"error: resource cap: {exc}"
    if config.emit_pwl and per_path:
        _emit_pwl(config.emit_pwl, per_path)
    if config.output == "json":
        return 0, json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return 0, _render_text(doc)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="minres", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    pa = sub.add_parser("analyze", help="analyze a single map")
    pa.add_argument("--phi", required=True, help='map, e.g. "(z^3-5)/z^2"')
    pa.add_argument("--prime", required=True, type=int)
    pa.add_argument("--algorithm", choices=["a", "b", "both", "auto"], default="auto")
    pa.add_argument("--precision", type=int, default=None)
    pa.add_argument("--max-ext-degree", type=int, default=None)
    pa.add_argument("--json", action="store_true")
    pa.add_argument("--emit-pwl", default=None, metavar="FILE")

    pb = sub.add_parser("batch", help="process '<prime> <map>' lines from a file")
    pb.add_argument("--input", required=True)
    pb.add_argument("--json", action="store_true")
    pb.add_argument("--algorithm", choices=["a", "b", "both", "auto"], default="auto")

    args = ap.parse_args(argv)
    if args.cmd == "analyze":
        if args.prime < 2 or any(args.prime % k == 0 for k in range(2, min(args.prime, 1000))):
            print("error: --prime must be prime", file=sys.stderr)
            return 2
        cfg = RunConfig(
            prime=args.prime,
            algorithm=args.algorithm,
            precision=args.precision,
            max_ext_degree=args.max_ext_degree,
            output="json" if args.json else "text",
            emit_pwl=args.emit_pwl,
        )
        code, text = run(cfg, args.phi)
        print(text)
        return code

    worst = 0
    with open(args.input) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                prime_s, expr = line.split(None, 1)
                prime = int(prime_s)
            except ValueError:
                print(f"line {lineno}: error: expected '<prime> <map>'")
                worst = max(worst, 2)
                continue
            cfg = RunConfig(
                prime=prime,
                algorithm=args.algorithm,
                output="json" if args.json else "text",
            )
            code, text = run(cfg, expr)
            prefix = f"line {lineno}: " if not args.json else ""
            if args.json:
                print(text)
            else:
                print(prefix + text.replace("\n", "\n" + " " * len(prefix)))
            worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
