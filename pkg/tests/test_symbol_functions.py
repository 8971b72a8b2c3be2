"""Tests for symbol_functions: Δ_n reduction, E_n membership and counting."""

import itertools

import pytest

from immersion_tools.abelian_groups import UNIVERSAL_GROUP, FinAbGroup
from immersion_tools.errors import GuardViolation, MalformedFunction
from immersion_tools.series import MonomialClass, degree_classes
from immersion_tools.symbol_functions import (
    SymbolFunction,
    SymbolTuple,
    all_tuples,
    count_en,
    delta_reduce,
    en_closed_form_count,
    hom_count_mn,
    is_in_en,
    iter_hom_images,
    pullback_function,
    tuple_repetition,
    universality_report,
)

Z2 = FinAbGroup((2,))
Z4 = FinAbGroup((4,))
Z2Z2 = FinAbGroup((2, 2))
Z8 = FinAbGroup((8,))


def brute_force_en(group, n):
    """Count E_n by scanning every Δ_n-consistent table."""
    tuples = all_tuples(n)
    everything = list(group.elements())
    torsion = group.two_torsion()
    choices = [torsion if z.needs_two_torsion else everything for z in tuples]
    return sum(
        is_in_en(SymbolFunction(n, group, dict(zip(tuples, values))))
        for values in itertools.product(*choices)
    )


class TestSymbolTuple:
    """Test tuples over Y = {T+, H+, Q+}."""

    def test_of_and_symbols(self):
        z = SymbolTuple.of(["Q+", "T+", "H+", "T+"])
        assert (z.t, z.h, z.q) == (2, 1, 1)
        assert z.symbols == ("T+", "T+", "H+", "Q+")
        assert str(z) == "[T+,T+,H+,Q+]"

    def test_rejects_unreduced(self):
        with pytest.raises(MalformedFunction):
            SymbolTuple.of(["T-"])

    @pytest.mark.parametrize(
        "counts,r", [((2, 0, 0), 0), ((0, 2, 0), 1), ((0, 3, 2), 3), ((1, 1, 1), 0)]
    )
    def test_repetition(self, counts, r):
        assert tuple_repetition(SymbolTuple(*counts)) == r

    def test_monomial_class(self):
        assert SymbolTuple(0, 2, 1).monomial_class == MonomialClass(0, 1, 2)

    @pytest.mark.parametrize("n,count", [(0, 1), (1, 3), (2, 6), (3, 10)])
    def test_all_tuples(self, n, count):
        assert len(all_tuples(n)) == count


class TestDeltaReduce:
    """Test reduction from the eight CE symbols."""

    def test_reduce(self):
        assert delta_reduce(["E-", "T-", "Q-", "H+"]) == SymbolTuple(1, 2, 1)

    def test_spellings(self):
        assert delta_reduce(["Tm", "q_+"]) == SymbolTuple(1, 0, 1)

    def test_unknown(self):
        with pytest.raises(MalformedFunction):
            delta_reduce(["X+"])


class TestIsInEn:
    """Test E_n membership."""

    def test_incomplete_table(self):
        f = SymbolFunction(1, Z2, {SymbolTuple(1, 0, 0): (1,)})
        with pytest.raises(MalformedFunction, match="misses 2"):
            is_in_en(f)

    def test_wrong_size(self):
        with pytest.raises(MalformedFunction):
            SymbolFunction(2, Z2, {SymbolTuple(1, 0, 0): (1,)})

    def test_non_torsion_value(self):
        table = {SymbolTuple(1): (1,), SymbolTuple(0, 1): (1,), SymbolTuple(0, 0, 1): (0,)}
        f = SymbolFunction(1, Z4, table)
        with pytest.raises(MalformedFunction):
            is_in_en(f)

    def test_linked_values_must_agree(self):
        """Test H+H+Q+ = H+Q+Q+ inside a degree-3 table."""
        table = {z: (0,) for z in all_tuples(3)}
        assert is_in_en(SymbolFunction(3, Z4, table))
        table[SymbolTuple(0, 2, 1)] = (2,)
        assert not is_in_en(SymbolFunction(3, Z4, table))
        table[SymbolTuple(0, 1, 2)] = (2,)
        assert is_in_en(SymbolFunction(3, Z4, table))

    def test_divisibility(self):
        """Test f(H+H+) ∈ 2·G: 2 is allowed in Z/4, nothing nonzero in Z/2."""
        table = {z: (0,) for z in all_tuples(2)}
        table[SymbolTuple(0, 2, 0)] = (2,)
        assert is_in_en(SymbolFunction(2, Z4, table))
        table = {z: (0,) for z in all_tuples(2)}
        table[SymbolTuple(0, 2, 0)] = (1,)
        assert not is_in_en(SymbolFunction(2, Z2, table))


class TestCountEn:
    """Test |E_n(G)| against closed form, brute force and Hom(M_n, G)."""

    @pytest.mark.parametrize(
        "group,n,count",
        [
            (Z2, 0, 2),
            (Z2, 1, 8),
            (Z2, 2, 16),
            (Z4, 1, 16),
            (Z4, 2, 128),
            (FinAbGroup(()), 3, 1),
        ],
    )
    def test_known_counts(self, group, n, count):
        assert count_en(group, n) == count

    @pytest.mark.parametrize(
        "group", [Z2, Z4, Z2Z2, Z8, FinAbGroup((2, 4)), FinAbGroup((3,))], ids=str
    )
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_closed_form(self, group, n):
        assert count_en(group, n) == en_closed_form_count(group, n)

    @pytest.mark.parametrize("n,count", [(2, 256), (3, 2048)])
    def test_closed_form_uses_two_torsion_multiples(self, n, count):
        """Test Z/8, where G[2] ∩ 2G has 2 elements but 2G ∩ G[4] has 4."""
        assert en_closed_form_count(Z8, n) == count
        assert count_en(Z8, n) == count

    @pytest.mark.parametrize("group,n", [(Z2, 2), (Z2, 3), (Z4, 1), (Z4, 2), (Z2Z2, 1)])
    def test_brute_force(self, group, n):
        assert count_en(group, n) == brute_force_en(group, n)

    @pytest.mark.parametrize(
        "group,n,hom", [(Z2, 1, 8), (Z2, 2, 64), (Z4, 2, 512), (Z2, 0, 2)]
    )
    def test_hom_counts(self, group, n, hom):
        assert hom_count_mn(group, n) == hom

    @pytest.mark.parametrize("group", [Z2, Z4, Z2Z2], ids=str)
    def test_sizes_agree_only_up_to_degree_one(self, group):
        """Test that |E_n(G)| = |Hom(M_n, G)| for n <= 1 and differs from n = 2 on."""
        for n in range(5):
            report = universality_report(group, n)
            assert report.consistent
            assert report.matches == (n <= 1)

    def test_odd_order_groups_match(self):
        """Test that without 2-torsion both sides reduce to |G| from the t^n summand."""
        for n in range(4):
            assert universality_report(FinAbGroup((3,)), n).matches

    def test_report_fields(self):
        report = universality_report(Z4, 2)
        assert report.model_dump() == {
            "group": "Z/4",
            "degree": 2,
            "en_count": 128,
            "hom_count": 512,
            "closed_form": 128,
            "matches": False,
            "consistent": True,
        }

    @pytest.mark.parametrize(
        "group,n",
        [(UNIVERSAL_GROUP, 1), (Z2, 5), (Z2, -1), (FinAbGroup((2, 2, 2, 2, 2)), 1)],
    )
    def test_guards(self, group, n):
        with pytest.raises(GuardViolation):
            count_en(group, n)


class TestPullbacks:
    """Test that homomorphisms M_n -> G pull back into E_n."""

    @pytest.mark.parametrize("group,n", [(Z2, 2), (Z4, 2), (Z2, 3), (Z2Z2, 1)])
    def test_every_pullback_is_in_en(self, group, n):
        images = list(iter_hom_images(group, n))
        assert len(images) == hom_count_mn(group, n)
        for phi in images:
            assert is_in_en(pullback_function(group, n, phi))

    def test_pullback_values(self):
        """Test z ↦ 2^r·φ(ζ): H+H+ gets 2·φ(ζ_{p²})."""
        phi = {cls: (0,) if cls.modulus == 2 else (1,) for cls in degree_classes(2)}
        f = pullback_function(Z4, 2, phi)
        assert f[SymbolTuple(0, 2, 0)] == (2,)
        assert f[SymbolTuple(2, 0, 0)] == (1,)
        assert f[SymbolTuple(0, 1, 1)] == (0,)

    def test_missing_image(self):
        with pytest.raises(MalformedFunction):
            pullback_function(Z2, 1, {MonomialClass(1): (1,)})

    def test_image_order_violation(self):
        """Test that ζ_p has order 2, so it cannot go to 1 ∈ Z/4."""
        images = {cls: (0,) for cls in degree_classes(1)}
        images[MonomialClass(0, 1)] = (1,)
        with pytest.raises(MalformedFunction):
            pullback_function(Z4, 1, images)
