"""Independent brute-force verifiers: grid evaluation of the resultant-order
function over rational-center discs, and a direct Sylvester-determinant check
of the conjugation transformation law.

These exist to arbitrate: the grid walks plain (center, radius) boxes with no
knowledge of the path machinery's argmin logic, and the law check recomputes
the conjugated resultant as an actual determinant instead of through the law.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynrep import HomogPair, MobiusMap, TypeIIPoint, conjugate, normalize, ordres, translate
from .padic import ordp
from .polyroots import resultant
from .pwl import evaluate as pwl_evaluate
from .analysis import _anchored_chi


@dataclass(frozen=True)
class GridSpec:
    """Rational-center grid: centers are the integers 0 <= b < p^depth, radius
    exponents run over s_lo..s_hi in steps of s_step."""

    depth: int
    s_lo: Fraction
    s_hi: Fraction
    s_step: Fraction

    def s_values(self):
        lo = Fraction(self.s_lo)
        hi = Fraction(self.s_hi)
        step = Fraction(self.s_step)
        # align to the step lattice so 0 and the half-integers are included
        q = lo / step
        k = -((-q.numerator) // q.denominator)  # ceil
        s = k * step
        out = []
        while s <= hi:
            out.append(s)
            s += step
        return out


def grid_min(phi: HomogPair, p: int | None = None, spec: GridSpec | None = None):
    """Minimum of the resultant-order function over the grid, with the list of
    minimizing (center, s) pairs.

    Per center the radius sweep is the path restriction of the translated
    pair, so each value equals ordres_at at that disc; the identity is spot
    checked against the direct evaluation in the tests.
    """
    if spec is None:
        raise ValueError("grid_min needs a GridSpec")
    if p is not None and p != phi.p:
        raise ValueError("prime mismatch")
    p = phi.p
    pair, _ = normalize(phi)
    R0 = ordres(pair).finite
    svals = spec.s_values()
    best = None
    argmin = []
    for b in range(p ** spec.depth):
        chi, _, _ = _anchored_chi(pair, Fraction(b), R0)
        for s in svals:
            v = pwl_evaluate(chi, -s)
            if best is None or v < best:
                best = v
                argmin = [(Fraction(b), s)]
            elif v == best:
                argmin.append((Fraction(b), s))
    return best, argmin


def check_transformation_law(pair: HomogPair, gamma: MobiusMap) -> bool:
    """Exact equality of the directly computed Sylvester determinant of the
    conjugated pair with Res(F, G) * det(gamma)^(d^2+d)."""
    if not (pair.is_rational() and gamma.is_rational()):
        raise ValueError("the law check runs over exact rationals")
    d = pair.d
    conj = conjugate(pair, gamma)
    lhs = resultant(conj.a, conj.b, d)
    rhs = resultant(pair.a, pair.b, d) * Fraction(gamma.det()) ** (d * d + d)
    return lhs == rhs
