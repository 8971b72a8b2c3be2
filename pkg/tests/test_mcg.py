"""Tests for mcg: Ω of mapping classes, good maps, the Klein bottle and triple points."""

import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from immersion_tools.ce_events import CEEvent, reverse_log
from immersion_tools.decomp import psi
from immersion_tools.errors import (
    DimensionMismatch,
    DomainError,
    IllegalGenerator,
    MissingRationalAction,
    NotOrthogonal,
    ParityViolation,
    SingularMatrix,
)
from immersion_tools.gf2core import (
    Gf2Matrix,
    Gf2Vector,
    IntMatrix,
    det,
    identity,
    inverse,
    mat_mul,
)
from immersion_tools.hform import HALF, MINUS_HALF, ONE, ZERO, HForm, enumerate_group, evaluate
from immersion_tools.mcg import (
    GoodMap,
    GoodMapKind,
    MappingClassData,
    SurfaceDescriptor,
    compose,
    extend_by_identity,
    good_map_factorization,
    good_map_z2_action,
    is_in_ng,
    klein_bottle_catalog,
    klein_entry,
    omega,
    omega_parities,
    triple_invariant,
    triple_point_change,
    triple_points_after,
)

SWAP = Gf2Matrix([[0, 1], [1, 0]])


@st.composite
def gf2_invertibles(draw, n):
    """A product of random row additions and swaps over GF(2)."""
    rows = np.eye(n, dtype=np.uint8)
    for i, j, swap in draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.booleans()))
    ):
        if i == j:
            continue
        if swap:
            rows[[i, j]] = rows[[j, i]]
        else:
            rows[i] ^= rows[j]
    return Gf2Matrix(rows)


def _elementary(n, i, j, k):
    rows = IntMatrix.identity(n).to_rows()
    if i == j:
        rows[i][i] = -1
    else:
        rows[i][j] = k
    return IntMatrix(rows)


@st.composite
def unimodular_pairs(draw, n):
    """An integer matrix of determinant ±1 together with its inverse."""
    m = m_inv = IntMatrix.identity(n)
    if n == 0:
        return m, m_inv
    indices = st.integers(0, n - 1)
    for i, j, k in draw(st.lists(st.tuples(indices, indices, st.integers(-2, 2)), max_size=8)):
        m = _elementary(n, i, j, k) @ m
        m_inv = m_inv @ _elementary(n, i, j, -k if i != j else k)
    return m, m_inv


@st.composite
def mapping_classes(draw, genus):
    h_star = draw(gf2_invertibles(genus))
    n = genus - 1
    entries = draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n))
    h_starstar = IntMatrix([entries[i * n : (i + 1) * n] for i in range(n)])
    assume(det(h_starstar) != 0)
    return MappingClassData(h_star, h_starstar)


@st.composite
def conjugating_pairs(draw, genus):
    """A mapping class and its inverse."""
    h_star = draw(gf2_invertibles(genus))
    u, u_inv = draw(unimodular_pairs(genus - 1))
    return MappingClassData(h_star, u), MappingClassData(inverse(h_star), u_inv)


def v(*bits):
    return Gf2Vector(bits)


class TestSurfaceDescriptor:
    """Test surface metadata."""

    @pytest.mark.parametrize("genus,parity", [(1, 1), (2, 0), (3, 1), (10, 0)])
    def test_parity_filled_in(self, genus, parity):
        assert SurfaceDescriptor(genus=genus).euler_char_parity == parity

    def test_wrong_parity_rejected(self):
        with pytest.raises(ValidationError):
            SurfaceDescriptor(genus=2, euler_char_parity=1)

    def test_genus_must_be_positive(self):
        with pytest.raises(ValidationError):
            SurfaceDescriptor(genus=0)

    def test_named_surfaces(self):
        assert SurfaceDescriptor.projective_plane().genus == 1
        assert SurfaceDescriptor.klein_bottle().genus == 2


class TestMappingClassData:
    """Test construction checks."""

    def test_singular_h_star(self):
        with pytest.raises(SingularMatrix):
            MappingClassData(Gf2Matrix([[1, 1], [1, 1]]))

    def test_h_starstar_dimension(self):
        with pytest.raises(DimensionMismatch):
            MappingClassData(identity(3), IntMatrix.identity(3))

    def test_h_starstar_singular(self):
        with pytest.raises(SingularMatrix):
            MappingClassData(identity(3), IntMatrix([[1, 2], [2, 4]]))

    def test_identity(self):
        h = MappingClassData.identity(4)
        assert h.genus == 4
        assert omega(h) == 0

    def test_genus_one_has_empty_rational_action(self):
        """Test that N_1 has H_1(F; Q) = 0, so h_** is 0x0 with det 1."""
        h = MappingClassData.identity(1)
        assert h.h_starstar.n == 0
        assert omega(h) == 0


class TestOmega:
    """Test Ω(h) = ψ(h_*) + ε(det h_**)."""

    @pytest.mark.parametrize("name,expected", [("id", 0), ("u", 1), ("v", 0), ("vu", 1)])
    def test_klein_bottle_values(self, name, expected):
        assert omega(klein_entry(name).data) == expected

    def test_catalog_matches_expected(self):
        for entry in klein_bottle_catalog():
            assert omega(entry.data) == entry.expected_omega

    def test_catalog_is_a_group(self):
        """Test that the catalog is closed under composition with v∘v = u∘u = id."""
        entries = {e.name: e.data for e in klein_bottle_catalog()}
        assert compose(entries["v"], entries["u"]) == entries["vu"]
        assert compose(entries["u"], entries["u"]) == entries["id"]
        assert compose(entries["v"], entries["v"]) == entries["id"]

    def test_omega_is_additive_on_catalog(self):
        entries = [e.data for e in klein_bottle_catalog()]
        for a, b in itertools.product(entries, repeat=2):
            assert omega(compose(a, b)) == (omega(a) + omega(b)) % 2

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(1, 6).flatmap(
            lambda k: st.lists(mapping_classes(k), min_size=2, max_size=4)
        )
    )
    def test_omega_is_additive_on_random_products(self, factors):
        """Test Ω(h1∘...∘hk) = ΣΩ(hi) for genus up to 6."""
        product = factors[0]
        for h in factors[1:]:
            product = compose(product, h)
        assert omega(product) == sum(omega(h) for h in factors) % 2

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(1, 6).flatmap(
            lambda k: st.tuples(mapping_classes(k), conjugating_pairs(k))
        )
    )
    def test_omega_is_conjugation_invariant(self, drawn):
        h, (c, c_inv) = drawn
        assert compose(c, c_inv) == MappingClassData.identity(h.genus)
        assert omega(compose(compose(c, h), c_inv)) == omega(h)

    def test_missing_rational_action(self):
        with pytest.raises(MissingRationalAction):
            omega(MappingClassData(SWAP))

    def test_parities_agree(self):
        parities = omega_parities(klein_entry("u").data)
        assert parities.tangency_parity == parities.quadruple_parity == 1

    def test_large_determinant_sign(self):
        """Test that ε only depends on the sign of a large determinant."""
        h = MappingClassData(identity(3), IntMatrix([[10**20, 1], [1, 0]]))
        assert omega(h) == 1

    def test_extension_keeps_omega(self):
        for entry in klein_bottle_catalog():
            extended = extend_by_identity(entry.data, 3)
            assert extended.genus == 5
            assert omega(extended) == entry.expected_omega

    def test_extension_rejects_negative(self):
        with pytest.raises(DomainError):
            extend_by_identity(MappingClassData.identity(2), -1)

    def test_compose_genus_mismatch(self):
        with pytest.raises(DimensionMismatch):
            compose(MappingClassData.identity(2), MappingClassData.identity(3))

    def test_compose_drops_missing_rational_action(self):
        h = compose(MappingClassData(SWAP), klein_entry("u").data)
        assert h.h_starstar is None


class TestIsInNg:
    """Test membership of h_* in O(E, g)."""

    def test_swap_preserves_equal_values(self):
        g = HForm.from_orthonormal([HALF, HALF])
        assert is_in_ng(g, klein_entry("v").data)

    def test_swap_breaks_opposite_values(self):
        """Test that v is not in N_g when g(e_1) != g(e_2)."""
        g = HForm.from_orthonormal([HALF, MINUS_HALF])
        assert not is_in_ng(g, klein_entry("v").data)
        assert is_in_ng(g, klein_entry("u").data)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            is_in_ng(HForm.from_orthonormal([HALF]), klein_entry("v").data)


class TestGoodMaps:
    """Test Z/2 actions of the five good-map kinds."""

    G = HForm.from_orthonormal([HALF, MINUS_HALF, HALF, MINUS_HALF])

    @pytest.mark.parametrize(
        "kind,c",
        [
            (GoodMapKind.SQUARED_TWIST, v(1, 1, 0, 0)),
            (GoodMapKind.NULL_TWIST, v(0, 0, 0, 0)),
            (GoodMapKind.Y_MAP, None),
        ],
    )
    def test_trivial_actions(self, kind, c):
        assert good_map_z2_action(self.G, kind, c) == identity(4)

    def test_twist_is_t(self):
        c = v(1, 0, 1, 0)
        assert evaluate(self.G, c) == ONE
        m = good_map_z2_action(self.G, GoodMapKind.TWIST, c)
        assert psi(m) == 1
        assert m(Gf2Vector.basis(0, 4)) == Gf2Vector.basis(2, 4)

    def test_s_p(self):
        c, d = v(1, 1, 0, 0), v(0, 0, 1, 1)
        assert evaluate(self.G, c) == ZERO == evaluate(self.G, d)
        m = good_map_z2_action(self.G, GoodMapKind.S_P, c, d)
        assert psi(m) == 0

    def test_int_kinds_accepted(self):
        assert good_map_z2_action(self.G, 5) == identity(4)

    @pytest.mark.parametrize(
        "kind,c,d",
        [
            (GoodMapKind.SQUARED_TWIST, v(1, 0, 0, 0), None),
            (GoodMapKind.TWIST, v(1, 1, 0, 0), None),
            (GoodMapKind.NULL_TWIST, v(1, 1, 0, 0), None),
            (GoodMapKind.S_P, v(1, 1, 0, 0), None),
            (GoodMapKind.S_P, v(1, 1, 0, 0), v(1, 0, 1, 0)),
            (GoodMapKind.TWIST, None, None),
        ],
    )
    def test_preconditions(self, kind, c, d):
        with pytest.raises(IllegalGenerator):
            good_map_z2_action(self.G, kind, c, d)

    def test_factorization_reproduces_h_star(self):
        g = HForm.from_orthonormal([HALF, HALF, MINUS_HALF])
        for m in enumerate_group(g):
            maps = good_map_factorization(g, m)
            product = identity(3)
            for good_map in maps:
                assert isinstance(good_map, GoodMap)
                assert good_map.kind in (GoodMapKind.TWIST, GoodMapKind.S_P)
                product = mat_mul(good_map.action(g), product)
            assert product == m

    def test_factorization_is_twists_only_when_stable(self):
        g = HForm.from_orthonormal([HALF, MINUS_HALF] * 4 + [HALF])
        m = good_map_z2_action(g, GoodMapKind.S_P, Gf2Vector.from_support([0, 1], 9),
                               Gf2Vector.from_support([2, 3], 9))
        maps = good_map_factorization(g, m)
        assert {x.kind for x in maps} == {GoodMapKind.TWIST}

    def test_factorization_rejects_non_orthogonal(self):
        with pytest.raises(NotOrthogonal):
            good_map_factorization(HForm.from_orthonormal([HALF, MINUS_HALF]), SWAP)


class TestTriplePoints:
    """Test the triple-point invariant T(i) = (N - c)/2."""

    @pytest.mark.parametrize("genus", [1, 2, 3, 4])
    def test_every_admissible_count(self, genus):
        surface = SurfaceDescriptor(genus=genus)
        c = surface.euler_char_parity
        for n_triple in range(101):
            if (n_triple - c) % 2:
                with pytest.raises(ParityViolation):
                    triple_invariant(n_triple, surface)
            else:
                assert 2 * triple_invariant(n_triple, surface) + c == n_triple

    def test_boy_surface(self):
        """Test that a single triple point on RP^2 has invariant 0."""
        assert triple_invariant(1, SurfaceDescriptor.projective_plane()) == 0

    def test_negative_count(self):
        with pytest.raises(ParityViolation):
            triple_invariant(-2, SurfaceDescriptor.klein_bottle())

    def test_change_along_log(self):
        log = [CEEvent("T", 1), CEEvent("E", -1), CEEvent("T", 1), CEEvent("Q")]
        assert triple_point_change(log) == 4
        assert triple_point_change(reverse_log(log)) == -4
        assert triple_points_after(1, log) == 5

    def test_cannot_go_negative(self):
        with pytest.raises(DomainError):
            triple_points_after(1, [CEEvent("T", -1)])
