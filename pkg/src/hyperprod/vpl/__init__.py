"""Visibly pushdown alphabets, words, automata and grammars."""

from hyperprod.vpl.alphabet import BOTTOM, Letter, LetterKind, VPAlphabet, Word, make_alphabet
from hyperprod.vpl.emptiness import vpa_is_empty, vpa_witness
from hyperprod.vpl.vpa import (
    Vpa,
    reverse_vpa,
    restrict_well_matched,
    vpa_accepts,
    vpa_complement,
    vpa_complete,
    vpa_intersect,
    well_matched_vpa,
    wn_shuffle,
)
from hyperprod.vpl.vpg import (
    Production,
    Vpg,
    concat_vpg,
    reverse_vpg,
    vpa_to_vpg,
    vpg_enumerate,
    vpg_to_vpa,
    vpg_trim,
    vpg_uniformize,
)
from hyperprod.vpl.words import (
    MatchingRelation,
    is_well_matched,
    is_well_nested,
    matching_of,
    project,
    reverse_word,
)

__all__ = [
    "BOTTOM",
    "Letter",
    "LetterKind",
    "MatchingRelation",
    "Production",
    "VPAlphabet",
    "Vpa",
    "Vpg",
    "Word",
    "concat_vpg",
    "is_well_matched",
    "is_well_nested",
    "make_alphabet",
    "matching_of",
    "project",
    "restrict_well_matched",
    "reverse_vpa",
    "reverse_vpg",
    "reverse_word",
    "vpa_accepts",
    "vpa_complement",
    "vpa_complete",
    "vpa_intersect",
    "vpa_is_empty",
    "vpa_to_vpg",
    "vpa_witness",
    "vpg_enumerate",
    "vpg_to_vpa",
    "vpg_trim",
    "vpg_uniformize",
    "well_matched_vpa",
    "wn_shuffle",
]
