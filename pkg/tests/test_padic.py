"""Exact valuations, extension towers, and precision signaling."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minres.padic import (
    INF,
    FieldElt,
    LocalField,
    PrecisionLoss,
    ValQ,
    adjoin,
    elt_val,
    ordp,
    residue,
    try_elt_val,
)

F = Fraction


class TestValQ:
    def test_infinity_absorbs_and_wins_min(self):
        assert (INF + ValQ(3)).is_infinite
        assert min(INF, ValQ(-7)) == ValQ(-7)
        assert ValQ(2) < INF and not INF < ValQ(2)
        assert INF == ValQ(None) and INF <= INF

    def test_exact_comparisons(self):
        assert ValQ(F(1, 3)) + ValQ(F(1, 6)) == ValQ(F(1, 2))
        assert ValQ(F(2, 6)) == ValQ(F(1, 3))
        with pytest.raises(ValueError):
            ValQ(1) - INF


class TestOrdp:
    def test_spec_values(self):
        assert ordp(50, 5) == 2
        assert ordp(F(3, 8), 2) == -3
        assert ordp(0, 7).is_infinite

    @given(
        st.fractions(min_value=-1000, max_value=1000),
        st.fractions(min_value=-1000, max_value=1000),
        st.sampled_from([2, 3, 5, 7]),
    )
    @settings(max_examples=120, deadline=None)
    def test_valuation_laws(self, x, y, p):
        if x == 0 or y == 0:
            return
        assert ordp(x * y, p) == ValQ(ordp(x, p).finite + ordp(y, p).finite)
        if x + y != 0:
            lhs = ordp(x + y, p)
            lo = min(ordp(x, p), ordp(y, p))
            assert lhs >= lo
            if ordp(x, p) != ordp(y, p):
                assert lhs == lo


class TestAdjoin:
    def test_eisenstein_cube_root(self):
        f = adjoin(LocalField(5), "eisenstein", [-5, 0, 0, 1])
        assert f.e == 3 and f.f == 1
        assert elt_val(f.gen()) == F(1, 3)
        assert elt_val(f.uniformizer()) == F(1, 3)

    def test_unramified_quadratic(self):
        f = adjoin(LocalField(2), "unramified", [1, 1, 1])
        assert f.f == 2 and f.e == 1
        assert f.residue_field.size == 4
        w = f.gen()
        assert elt_val(w * w + w + 1).is_infinite

    def test_kind_mismatch_detected(self):
        with pytest.raises(ValueError):
            adjoin(LocalField(2), "unramified", [1, 0, 1])  # reduces to (x+1)^2
        with pytest.raises(ValueError):
            adjoin(LocalField(2), "eisenstein", [1, 0, 1])  # unit constant term

    def test_degree_cap(self):
        from minres.padic import ExtensionCapError

        base = LocalField(5, degree_cap=2)
        with pytest.raises(ExtensionCapError):
            base.adjoin_ramified([-5, 0, 0, 1])

    def test_generalized_eisenstein_step(self):
        # z^2 + 2z + 2 over Q_2: single segment of slope -1/2
        f = LocalField(2).adjoin_ramified([2, 2, 1])
        i = f.gen() + 1
        assert elt_val(i * i + 1).is_infinite
        assert elt_val(f.gen()) == F(1, 2)


class TestEltVal:
    def test_base_values(self):
        Q5 = LocalField(5)
        assert elt_val(Q5.embed(F(1, 5))) == -1

    def test_half_valuation(self):
        f = LocalField(2).adjoin_ramified([2, 2, 1])
        one_plus_i = f.gen() + 2  # (gen + 1) + 1
        assert elt_val(one_plus_i) == F(1, 2)

    def test_cap_signal(self):
        Q5 = LocalField(5)
        x = Q5.embed(5 ** 7 * 3).reduce_mod(7)
        assert x.val_repr() >= 7
        with pytest.raises(PrecisionLoss):
            elt_val(x)
        assert try_elt_val(x) is None

    def test_exact_zero_reports_infinity(self):
        Q5 = LocalField(5)
        assert elt_val(Q5.zero()).is_infinite


class TestResidue:
    def test_spec_values(self):
        Q5 = LocalField(5)
        assert residue(Q5.embed(7)).data == 2
        assert residue(Q5.embed(5)).data == 0
        f = LocalField(2).adjoin_ramified([2, 2, 1])
        assert residue(f.gen() + 1) == f.residue_field.one()

    def test_negative_valuation_rejected(self):
        Q5 = LocalField(5)
        with pytest.raises(ValueError):
            residue(Q5.embed(F(1, 5)))

    def test_ring_morphism_on_random_pairs(self, rng):
        f = LocalField(3).adjoin_unramified([1, 2, 0, 1])
        for _ in range(40):
            x = sum(
                (f.gen() ** i) * rng.randint(0, 26) for i in range(3)
            ) + f.embed(rng.randint(0, 8))
            y = (f.gen() ** rng.randint(0, 2)) * rng.randint(1, 26)
            assert residue(x + y) == residue(x) + residue(y)
            assert residue(x * y) == residue(x) * residue(y)


class TestTower:
    def test_embedding_preserves_valuation(self, rng):
        base = LocalField(5)
        ext = base.adjoin_ramified([-5, 0, 0, 1]).adjoin_unramified([2, 1, 1])
        for _ in range(30):
            x = base.embed(F(rng.randint(-500, 500), rng.choice([1, 5, 25, 3])))
            lifted = x.lift_to(ext)
            assert elt_val(lifted) == elt_val(x)

    def test_arithmetic_exactness(self):
        f = LocalField(5).adjoin_ramified([-5, 0, 0, 1])
        pi = f.gen()
        x = (pi + 1) / (pi * pi - 2)
        assert elt_val(x * (pi * pi - 2) - (pi + 1)).is_infinite
        assert elt_val(pi ** 3 - 5).is_infinite

    def test_reduce_mod_tracks_precision(self):
        Q7 = LocalField(7)
        x = Q7.embed(F(123456789, 11))
        y = x.reduce_mod(4)
        assert (y - x).val_repr() >= 4
        assert y.prec == ValQ(4)
