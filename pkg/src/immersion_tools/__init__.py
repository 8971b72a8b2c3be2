from __future__ import annotations

__version__ = "0.1.0"

from immersion_tools.abelian_groups import FinAbGroup, parse_group
from immersion_tools.ce_events import (
    CEEvent,
    CEKind,
    UniversalValue,
    codim2_relations_check,
    f1u,
)
from immersion_tools.ce_symbols import CE_SYMBOLS, SYMBOLS, SymbolRegistry
from immersion_tools.cli import main as cli_main
from immersion_tools.decomp import (
    GeneratorWord,
    decompose,
    decompose_stable,
    psi,
    rewrite_s_free,
    word_product,
)
from immersion_tools.errors import (
    DomainError,
    ImmersionToolsError,
    InternalExhaustion,
    PayloadError,
)
from immersion_tools.gf2core import Gf2Matrix, Gf2Vector, IntMatrix, det_sign, rank
from immersion_tools.hform import (
    HForm,
    HValue,
    Transvection,
    apply_transvection,
    enumerate_group,
    evaluate,
    is_orthogonal,
    orthonormalize,
    validate,
)
from immersion_tools.mcg import (
    MappingClassData,
    SurfaceDescriptor,
    good_map_z2_action,
    is_in_ng,
    klein_bottle_catalog,
    omega,
    triple_invariant,
)
from immersion_tools.series import (
    MElement,
    MonomialClass,
    canonicalize,
    f_n,
    f_series,
    k_action,
    m_structure,
    repetition,
    universal_invariant,
)
from immersion_tools.symbol_functions import (
    SymbolFunction,
    SymbolTuple,
    count_en,
    delta_reduce,
    is_in_en,
    tuple_repetition,
    universality_report,
)

__all__ = [
    # GF(2) linear algebra
    "Gf2Matrix",
    "Gf2Vector",
    "IntMatrix",
    "rank",
    "det_sign",
    # H-forms
    "HForm",
    "HValue",
    "Transvection",
    "evaluate",
    "validate",
    "orthonormalize",
    "apply_transvection",
    "is_orthogonal",
    "enumerate_group",
    # Generator words
    "GeneratorWord",
    "decompose",
    "decompose_stable",
    "rewrite_s_free",
    "word_product",
    "psi",
    # Mapping classes
    "SurfaceDescriptor",
    "MappingClassData",
    "is_in_ng",
    "omega",
    "good_map_z2_action",
    "klein_bottle_catalog",
    "triple_invariant",
    # Invariants
    "CE_SYMBOLS",
    "SYMBOLS",
    "SymbolRegistry",
    "CEEvent",
    "CEKind",
    "UniversalValue",
    "f1u",
    "codim2_relations_check",
    "MonomialClass",
    "MElement",
    "canonicalize",
    "repetition",
    "m_structure",
    "k_action",
    "f_series",
    "f_n",
    "universal_invariant",
    "FinAbGroup",
    "parse_group",
    "SymbolTuple",
    "SymbolFunction",
    "delta_reduce",
    "tuple_repetition",
    "is_in_en",
    "count_en",
    "universality_report",
    # Errors
    "ImmersionToolsError",
    "DomainError",
    "PayloadError",
    "InternalExhaustion",
    # CLI
    "cli_main",
]
