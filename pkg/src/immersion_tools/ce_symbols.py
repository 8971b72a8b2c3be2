"""
Central registry for codimension-1 event (CE) symbols.

Maps between:
- the eight symbols of C_1 = {E±, H±, T±, Q±} (kind plus degree label)
- accepted spellings (``"T+"``, ``"T_+"``, ``"Tp"``, ``"T_-"``, ``"Tm"``)
- the reduced alphabet Y = {T+, H+, Q+} on which every Δ_n function is determined
"""

from typing import Iterator, KeysView, Literal, Optional

from pydantic import BaseModel

# ===========================
# Constants
# ===========================

CEKindName = Literal["E", "H", "T", "Q"]
DegreeLabel = Literal["+", "-"]

#: Reduced alphabet, in canonical sort order.
Y_SYMBOLS: tuple[str, ...] = ("T+", "H+", "Q+")


# ===========================
# Symbol Metadata
# ===========================


class SymbolMetadata(BaseModel):
    """Metadata for a CE symbol R_e.

    Attributes:
        kind: Configuration type of the event
        degree: Degree label d_p(i) in {+, -}
        co_orientable: True for E and T, which carry a permanent co-orientation
        tangency: True for the two-sheet tangency kinds E and H
        reduced: The Y symbol this symbol equals under the Δ relations
        model: Local model of the one-parameter family crossing the stratum
    """

    kind: CEKindName
    degree: DegreeLabel
    co_orientable: bool
    tangency: bool
    reduced: str
    model: str


def _meta(kind: CEKindName, degree: DegreeLabel, reduced: str, model: str) -> SymbolMetadata:
    return SymbolMetadata(
        kind=kind,
        degree=degree,
        co_orientable=kind in ("E", "T"),
        tangency=kind in ("E", "H"),
        reduced=reduced,
        model=model,
    )


_MODELS = {
    "E": "z=0, z=x^2+y^2+lambda",
    "H": "z=0, z=x^2-y^2+lambda",
    "T": "z=0, y=0, z=y+x^2+lambda",
    "Q": "z=0, y=0, x=0, z=x+y+lambda",
}

# E and H both reduce to H+ since E+ = E- = H+ = H- under the Δ relations
CE_SYMBOLS: dict[str, SymbolMetadata] = {
    f"{kind}{deg}": _meta(kind, deg, reduced, _MODELS[kind])
    for kind, reduced in (("E", "H+"), ("H", "H+"), ("T", "T+"), ("Q", "Q+"))
    for deg in ("+", "-")
}


# ===========================
# Symbol Registry
# ===========================


class SymbolRegistry:
    """Registry providing CE symbol lookups and Δ-reduction.

    The registry is typically used via the singleton SYMBOLS instance:

        >>> from immersion_tools.ce_symbols import SYMBOLS
        >>> SYMBOLS["E-"].reduced
        'H+'
        >>> SYMBOLS.canonical_name("T_-")
        'T-'
    """

    def __init__(self, symbols: dict[str, SymbolMetadata]) -> None:
        self._symbols = symbols

    # -------------------------
    # Dict-like interface
    # -------------------------

    def __getitem__(self, name: str) -> SymbolMetadata:
        return self._symbols[name]

    def __contains__(self, name: object) -> bool:
        return name in self._symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def keys(self) -> KeysView[str]:
        return self._symbols.keys()

    # -------------------------
    # Lookups
    # -------------------------

    def canonical_name(self, spelling: str) -> Optional[str]:
        """Normalise a spelling such as ``"Q_-"``, ``"Qm"`` or ``"q+"`` to ``"Q-"``."""
        text = spelling.strip().replace("_", "").replace("{", "").replace("}", "")
        if len(text) != 2:
            return None
        kind, deg = text[0].upper(), text[1]
        deg = {"p": "+", "m": "-"}.get(deg, deg)
        name = f"{kind}{deg}"
        return name if name in self._symbols else None

    def get_by_any(self, spelling: str) -> Optional[SymbolMetadata]:
        name = self.canonical_name(spelling)
        return self._symbols[name] if name else None

    def reduce(self, spelling: str) -> str:
        """Y symbol equal to ``spelling`` under the Δ relations."""
        meta = self.get_by_any(spelling)
        if meta is None:
            raise KeyError(f"Unknown CE symbol: {spelling!r}")
        return meta.reduced

    def of_kind(self, kind: str) -> list[str]:
        return [name for name, meta in self._symbols.items() if meta.kind == kind]


SYMBOLS = SymbolRegistry(CE_SYMBOLS)
