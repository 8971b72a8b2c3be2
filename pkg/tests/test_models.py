"""Tests for the JSON payload models."""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from immersion_tools.ce_events import CEEvent, CEKind, UniversalValue
from immersion_tools.decomp import GeneratorWord
from immersion_tools.gf2core import Gf2Matrix, Gf2Vector, IntMatrix
from immersion_tools.hform import HALF, MINUS_HALF, HForm, Transvection
from immersion_tools.mcg import klein_entry
from immersion_tools.models import (
    CEEventModel,
    EventLogModel,
    GeneratorWordModel,
    Gf2MatrixModel,
    HFormModel,
    IntMatrixModel,
    MappingClassModel,
    MElementModel,
    SymbolAssignmentModel,
    TransvectionModel,
    UniversalValueModel,
)
from immersion_tools.series import MElement, MonomialClass, f_series


class TestMatrixModels:
    """Test matrix payloads."""

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValidationError):
            Gf2MatrixModel(rows=2, cols=2, data=[[1, 0], [1]])

    def test_declared_shape_must_match(self):
        with pytest.raises(ValidationError):
            Gf2MatrixModel(rows=1, cols=2, data=[[1, 0], [0, 1]])

    def test_non_binary_rejected(self):
        with pytest.raises(ValidationError):
            Gf2MatrixModel(rows=1, cols=1, data=[[2]])

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            Gf2MatrixModel(rows=0, cols=0, data=[])

    def test_rectangular_round_trip(self):
        m = Gf2Matrix([[1, 0, 1], [0, 1, 1]])
        model = Gf2MatrixModel.from_domain(m)
        assert (model.rows, model.cols) == (2, 3)
        assert model.to_domain() == m

    def test_int_entries_are_strings(self):
        """Test that large entries are carried as decimal strings."""
        big = 10**40
        model = IntMatrixModel.from_domain(IntMatrix([[big]]))
        assert model.model_dump() == {"rows": 1, "cols": 1, "data": [[str(big)]]}
        assert IntMatrixModel.model_validate_json(model.model_dump_json()).to_domain() == IntMatrix(
            [[big]]
        )

    def test_plain_ints_accepted(self):
        model = IntMatrixModel(rows=2, cols=2, data=[[-1, 0], [0, 1]])
        assert model.to_domain() == IntMatrix([[-1, 0], [0, 1]])

    def test_int_matrix_must_be_square(self):
        with pytest.raises(ValidationError):
            IntMatrixModel(rows=1, cols=2, data=[["1", "0"]])

    def test_empty_int_matrix(self):
        model = IntMatrixModel(rows=0, cols=0, data=[])
        assert model.to_domain() == IntMatrix([])


IDENTITY_2 = {"rows": 2, "cols": 2, "data": [[1, 0], [0, 1]]}


class TestFormModels:
    """Test H-form payloads."""

    def test_rendered_values(self):
        payload = {"dim": 2, "gram": [[1, 0], [0, 1]], "values": ["1/2", "-1/2"]}
        model = HFormModel.model_validate(payload)
        assert model.to_domain() == HForm.from_orthonormal([HALF, MINUS_HALF])

    def test_values_out_of_range(self):
        with pytest.raises(ValidationError):
            HFormModel.model_validate({"dim": 1, "gram": [[1]], "values": [5]})

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError):
            HFormModel.model_validate({"dim": 1, "gram": [[1]], "values": [1, 1]})

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            HFormModel.model_validate({"dim": 1, "gram": [[1]], "values": [1], "basis": []})

    def test_from_domain(self):
        g = HForm(Gf2Matrix([[1, 1], [1, 0]]), [1, 2])
        assert HFormModel.from_domain(g).to_domain() == g


class TestWordModels:
    """Test generator-word payloads."""

    def test_t_letter_takes_one_vector(self):
        with pytest.raises(ValidationError):
            TransvectionModel(kind="T", a=[1, 1], b=[1, 0])

    def test_s_letter_needs_two(self):
        with pytest.raises(ValidationError):
            TransvectionModel(kind="S", a=[1, 1])

    def test_word_json(self):
        payload = {
            "dim": 2,
            "letters": [{"kind": "T", "a": [1, 1]}],
        }
        word = GeneratorWordModel.model_validate(payload).to_domain()
        assert str(word) == "T[11]"
        assert GeneratorWordModel.from_domain(word).model_dump(exclude_none=True) == payload


class TestMappingClassModel:
    """Test mapping-class payloads."""

    def test_klein_entry_json(self):
        h = klein_entry("vu").data
        model = MappingClassModel.from_domain(h)
        assert model.model_dump(mode="json") == {
            "genus": 2,
            "h_star": {"rows": 2, "cols": 2, "data": [[0, 1], [1, 0]]},
            "h_starstar": {"rows": 1, "cols": 1, "data": [["1"]]},
        }
        assert model.to_domain() == h

    def test_genus_mismatch(self):
        with pytest.raises(ValidationError):
            MappingClassModel(genus=3, h_star=IDENTITY_2)

    def test_rational_dimension(self):
        with pytest.raises(ValidationError):
            MappingClassModel(genus=2, h_star=IDENTITY_2, h_starstar=IDENTITY_2)


class TestInvariantModels:
    """Test event-log and module-element payloads."""

    def test_event_sign_defaults(self):
        assert CEEventModel(kind="Q").to_domain() == CEEvent(CEKind.Q, 1)

    def test_event_sign_restricted(self):
        with pytest.raises(ValidationError):
            CEEventModel(kind="T", sign=2)

    def test_event_log(self):
        log = EventLogModel.model_validate({"events": [{"kind": "T", "sign": -1}]}).to_domain()
        assert log == [CEEvent(CEKind.T, -1)]

    def test_universal_value(self):
        model = UniversalValueModel.from_domain(UniversalValue(-3, 1, 0))
        assert model.model_dump() == {"t": -3, "p": 1, "q": 0}

    def test_assignment_root(self):
        model = SymbolAssignmentModel.model_validate({"T+": [1], "Q-": [0]})
        assert model.root == {"T+": [1], "Q-": [0]}

    def test_m_element(self):
        x = f_series(UniversalValue(1, 1, 0), 2)
        model = MElementModel.from_domain(x)
        assert model.degree == 2
        assert model.to_domain() == x
        zeta_p2 = [t for t in model.terms if (t.a, t.b, t.c) == (0, 2, 0)]
        assert zeta_p2[0].coeff == 1

    def test_m_element_canonicalises_terms(self):
        model = MElementModel.model_validate(
            {"degree": 3, "terms": [{"a": 0, "b": 2, "c": 1, "coeff": 1}]}
        )
        assert model.to_domain().coefficient(MonomialClass(0, 1, 2)) == 1


def _reloaded(model_cls, domain):
    payload = model_cls.from_domain(domain).model_dump_json()
    return model_cls.model_validate_json(payload).to_domain()


@st.composite
def gf2_matrices(draw):
    cols = draw(st.integers(1, 6))
    row = st.lists(st.integers(0, 1), min_size=cols, max_size=cols)
    return Gf2Matrix(draw(st.lists(row, min_size=1, max_size=6)))


@st.composite
def int_matrices(draw):
    n = draw(st.integers(0, 4))
    row = st.lists(st.integers(-(10**30), 10**30), min_size=n, max_size=n)
    return IntMatrix(draw(st.lists(row, min_size=n, max_size=n)))


@st.composite
def generator_words(draw):
    dim = draw(st.integers(1, 8))
    vectors = st.integers(1, (1 << dim) - 1).map(lambda x: Gf2Vector.from_int(x, dim))
    letter = st.one_of(
        st.builds(Transvection.t, vectors), st.builds(Transvection.s, vectors, vectors)
    )
    return GeneratorWord(tuple(draw(st.lists(letter, max_size=6))), dim)


monomial_classes = st.builds(
    MonomialClass, st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)
)
m_elements = st.builds(
    MElement, st.dictionaries(monomial_classes, st.integers(-20, 20)), st.integers(0, 9)
)
event_logs = st.lists(
    st.builds(CEEvent, st.sampled_from(list(CEKind)), st.sampled_from([1, -1])), max_size=12
)


class TestJsonRoundTrip:
    """Test that domain objects survive dumping to JSON and validating back."""

    @given(gf2_matrices())
    def test_gf2_matrix(self, m):
        assert _reloaded(Gf2MatrixModel, m) == m

    @given(int_matrices())
    def test_int_matrix(self, m):
        assert _reloaded(IntMatrixModel, m) == m

    @given(generator_words())
    def test_generator_word(self, word):
        assert _reloaded(GeneratorWordModel, word) == word

    @given(m_elements)
    def test_m_element(self, x):
        assert _reloaded(MElementModel, x) == x

    @given(event_logs)
    def test_event_log(self, log):
        assert _reloaded(EventLogModel, log) == log

    @given(st.integers(-50, 50), st.integers(0, 1), st.integers(0, 1))
    def test_universal_value(self, t, p, q):
        v = UniversalValue(t, p, q)
        assert _reloaded(UniversalValueModel, v) == v
