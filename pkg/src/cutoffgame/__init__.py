"""Exact solver for the numbers game with a -1 cutoff on Coxeter graphs."""
from __future__ import annotations

from .classify import (
    EnumerationIncomplete,
    Tag,
    Verdict,
    classify,
    classify_dynkin,
    classify_extended,
    classify_general,
    classify_integral,
    closed_form_minimal_losing,
    looping_subgraph_test,
    min_moves_formula,
    min_moves_formula_general,
    minimal_losing_catalog,
)
from .coxeter import CoxeterGraph, CoxeterType, Kind, ValidationError, build_family, build_general
from .game import FiringTrace, Outcome, fire, is_allowed, is_dominant, is_forbidden, play, usual_game_terminates
from .minuscule import MinusculeWord, extract_witness, verify_minuscule
from .oracle import Budgets, OracleTag, explore, min_moves_to_forbidden
from .roots import affine_test_roots, depth, dominates_simple, positive_roots, reflect
from .validation import FloatRejectedError, as_configuration, as_rational

__version__ = "0.1.0"

__all__ = [
    "Budgets",
    "CoxeterGraph",
    "CoxeterType",
    "EnumerationIncomplete",
    "FiringTrace",
    "FloatRejectedError",
    "Kind",
    "MinusculeWord",
    "OracleTag",
    "Outcome",
    "Tag",
    "ValidationError",
    "Verdict",
    "affine_test_roots",
    "as_configuration",
    "as_rational",
    "build_family",
    "build_general",
    "classify",
    "classify_dynkin",
    "classify_extended",
    "classify_general",
    "classify_integral",
    "closed_form_minimal_losing",
    "depth",
    "dominates_simple",
    "explore",
    "extract_witness",
    "fire",
    "is_allowed",
    "is_dominant",
    "is_forbidden",
    "looping_subgraph_test",
    "min_moves_formula",
    "min_moves_formula_general",
    "min_moves_to_forbidden",
    "minimal_losing_catalog",
    "play",
    "positive_roots",
    "reflect",
    "usual_game_terminates",
    "verify_minuscule",
]
