"""Exact minimization of a pointwise maximum of affine functions with integer
slopes and rational intercepts.  No floating point: ties decide locus shapes,
so everything stays in Fraction arithmetic."""

from __future__ import annotations

from fractions import Fraction


class UnboundedError(ValueError):
    """The max of the given terms has no finite minimum."""


class PWLFunc:
    """max over a finite set of terms slope*t + intercept.

    At most one term is retained per slope (the one with the largest
    intercept); terms with intercept None are dropped at construction, the
    convention for affine pieces coming from zero coefficients.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms):
        best = {}
        for slope, intercept in terms:
            if intercept is None:
                continue
            slope = int(slope)
            intercept = Fraction(intercept)
            if slope not in best or intercept > best[slope]:
                best[slope] = intercept
        self._terms = tuple(sorted(best.items()))

    @property
    def terms(self):
        return self._terms

    def __eq__(self, other):
        return isinstance(other, PWLFunc) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        pieces = " , ".join(f"{m}*t+{c}" for m, c in self._terms)
        return f"PWLFunc(max[{pieces}])"


def evaluate(f: PWLFunc, t) -> Fraction:
    """max over terms of slope*t + intercept."""
    t = Fraction(t)
    if not f.terms:
        raise UnboundedError("no terms")
    return max(m * t + c for m, c in f.terms)


def minimize(f: PWLFunc):
    """Exact minimum of the term maximum and the closed interval where it is
    attained.  Requires at least one positive and one negative slope, else the
    function is unbounded below in one direction."""
    terms = f.terms
    if not terms or terms[0][0] >= 0 or terms[-1][0] <= 0:
        raise UnboundedError("needs a positive-slope and a negative-slope term")
    candidates = set()
    for i, (m1, c1) in enumerate(terms):
        for m2, c2 in terms[i + 1:]:
            if m1 != m2:
                candidates.add(Fraction(c1 - c2, m2 - m1))
    best = None
    for t in candidates:
        v = evaluate(f, t)
        if best is None or v < best:
            best = v
    # argmin interval: intersect the half-lines where each term stays <= best
    lo, hi = None, None
    for m, c in terms:
        if m > 0:
            bound = Fraction(best - c, m)
            hi = bound if hi is None or bound < hi else hi
        elif m < 0:
            bound = Fraction(best - c, m)
            lo = bound if lo is None or bound > lo else lo
    assert lo is not None and hi is not None and lo <= hi
    return best, (lo, hi)
