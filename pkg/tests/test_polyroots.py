"""Newton polygons, exact resultants, squarefree reduction, and root finding
in extension towers."""

import random
from fractions import Fraction

import pytest

from minres.padic import LocalField, elt_val, residue
from minres.polyroots import (
    NPSegment,
    Poly,
    newton_polygon,
    q_mul,
    q_trim,
    resultant,
    roots,
    squarefree_part,
)

F = Fraction


class TestNewtonPolygon:
    def test_example_quartic(self):
        # the fixed-point quartic 1 + pz + p^4 z^3 - p^6 z^4 at p = 5
        g = Poly.from_rationals(LocalField(5), [1, 5, 0, 5 ** 4, -(5 ** 6)])
        segs = newton_polygon(g)
        assert segs == [
            NPSegment(F(1), 1),
            NPSegment(F(3, 2), 2),
            NPSegment(F(2), 1),
        ]

    def test_eisenstein(self):
        segs = newton_polygon(Poly.from_rationals(LocalField(5), [-5, 0, 1]))
        assert segs == [NPSegment(F(-1, 2), 2)]  # both roots have valuation 1/2

    def test_unit_roots(self):
        segs = newton_polygon(Poly.from_rationals(LocalField(5), [2, -3, 1]))
        assert segs == [NPSegment(F(0), 2)]

    def test_lengths_cover_span(self, rng):
        for _ in range(40):
            p = rng.choice([2, 3, 5])
            coeffs = [rng.randint(-50, 50) for _ in range(rng.randint(2, 7))] + [1]
            g = Poly.from_rationals(LocalField(p), coeffs)
            segs = newton_polygon(g)
            start = next(i for i, c in enumerate(coeffs) if c != 0)
            assert sum(s.length for s in segs) == len(coeffs) - 1 - start
            slopes = [s.slope for s in segs]
            assert slopes == sorted(slopes)
            assert len(set(slopes)) == len(slopes)


class TestSquarefree:
    def test_double_root(self):
        sf, mults = squarefree_part([1, -2, 1])
        assert q_trim(sf) == [F(-1), F(1)]
        assert list(mults.values()) == [2]

    def test_already_squarefree(self):
        sf, _ = squarefree_part([0, 1, 1])
        assert q_trim(sf) == [F(0), F(1), F(1)]

    def test_mixed(self):
        # z^3 - z^2 = z^2 (z - 1)
        sf, mults = squarefree_part([0, 0, -1, 1])
        assert len(q_trim(sf)) - 1 == 2
        assert sorted(mults.values()) == [1, 2]


class TestResultant:
    def test_diagonal(self):
        assert resultant([1, 0, 0], [0, 0, 1], 2) == 1

    def test_example_22(self):
        assert resultant([1, 0, -1], [0, 2, 0], 2) == -4

    def test_example_21_d3(self):
        # det of the Sylvester matrix itself; ord is 2 = d-1
        assert resultant([1, 0, 0, -5], [0, 1, 0, 0], 3) == 25

    def test_zero_iff_common_factor(self, rng):
        for _ in range(50):
            d = rng.randint(2, 4)
            a = [rng.randint(-9, 9) for _ in range(d + 1)]
            b = [rng.randint(-9, 9) for _ in range(d + 1)]
            if a[0] == 0 and b[0] == 0:
                continue
            res = resultant(a, b, d)
            from minres.polyroots import q_gcd

            fa = q_trim(list(reversed(a)))
            fb = q_trim(list(reversed(b)))
            if not fa or not fb:
                continue
            g = q_gcd(fa, fb)
            common = len(g) > 1 or (len(fa) - 1 < d and len(fb) - 1 < d)
            assert (res == 0) == common, (a, b)


class TestRoots:
    def test_split_quadratic(self):
        recs = roots([1, 0, 1], 5, want_prec=20)
        assert len(recs) == 2
        assert all(r.host.degree == 1 for r in recs)
        assert sorted(residue(r.value).data for r in recs) == [2, 3]

    def test_eisenstein_orbit(self):
        recs = roots([-5, 0, 0, 1], 5, want_prec=20)
        assert len(recs) == 1
        assert recs[0].orbit_size == 3
        assert recs[0].host.e == 3
        assert elt_val(recs[0].value) == F(1, 3)

    def test_fixed_point_quartic_valuations(self):
        recs = roots([1, 5, 0, 5 ** 4, -(5 ** 6)], 5, want_prec=16)
        vals = []
        for r in recs:
            vals.extend([elt_val(r.value).finite] * r.orbit_size)
        assert sorted(vals) == [F(-2), F(-3, 2), F(-3, 2), F(-1)]

    def test_wild_quadratic(self):
        recs = roots([1, 0, 1], 2, want_prec=20)
        assert sum(r.orbit_size for r in recs) == 2
        for r in recs:
            v = Poly.from_rationals(r.host, [1, 0, 1])(r.value).val_repr()
            assert v.is_infinite or v >= 20

    def test_multiplicities(self):
        poly = q_mul(q_mul([-1, 1], [-1, 1]), [1, 1])  # (z-1)^2 (z+1)
        recs = roots(poly, 3, want_prec=16)
        assert sorted((r.multiplicity, r.orbit_size) for r in recs) == [(1, 1), (2, 1)]

    def test_residual_values_meet_precision(self, rng):
        for _ in range(60):
            p = rng.choice([2, 3, 5, 7])
            deg = rng.randint(2, 5)
            coeffs = [rng.randint(-20, 20) for _ in range(deg)] + [
                rng.choice([1, -1, 2, p, p * p])
            ]
            sf, _ = squarefree_part(coeffs)
            if len(sf) <= 1:
                continue
            recs = roots(coeffs, p, want_prec=12)
            assert sum(r.orbit_size for r in recs) == len(sf) - 1
            for r in recs:
                v = Poly.from_rationals(r.value.field, sf)(r.value).val_repr()
                assert v.is_infinite or v >= 12

    def test_newton_polygon_matches_root_valuations(self, rng):
        for _ in range(40):
            p = rng.choice([2, 3, 5])
            deg = rng.randint(2, 5)
            coeffs = [rng.randint(-30, 30) for _ in range(deg)] + [1]
            sf, _ = squarefree_part(coeffs)
            if len(sf) <= 1:
                continue
            recs = roots(coeffs, p, want_prec=10)
            by_np = {}
            for seg in newton_polygon(Poly.from_rationals(LocalField(p), sf)):
                by_np[-seg.slope] = by_np.get(-seg.slope, 0) + seg.length
            by_roots = {}
            for r in recs:
                v = elt_val(r.value)
                if not v.is_infinite:
                    by_roots[v.finite] = by_roots.get(v.finite, 0) + r.orbit_size
            assert by_np == by_roots

    def test_prescribed_valuation_products(self, rng):
        # random products of linear factors with prescribed valuations
        for _ in range(20):
            p = rng.choice([3, 5])
            vals = [rng.randint(-2, 2) for _ in range(rng.randint(2, 4))]
            poly = [F(1)]
            seen = set()
            units = [1, 2, p + 1, 2 * p + 1]
            for v in vals:
                root = F(rng.choice(units)) * F(p) ** v
                if root in seen:
                    root += F(p) ** (v + 3)
                seen.add(root)
                poly = q_mul(poly, [-root, F(1)])
            recs = roots(poly, p, want_prec=10)
            got = []
            for r in recs:
                got.extend([elt_val(r.value).finite] * r.orbit_size)
            want_vals = sorted(
                elt_val(LocalField(p).embed(rt)).finite for rt in seen
            )
            assert sorted(got) == want_vals
