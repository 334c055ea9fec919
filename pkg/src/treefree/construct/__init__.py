"""Witness constructions, rigidity probes and variant families."""

from .builders import (
    Builder,
    ExtraEdges,
    InconsistentGlue,
    InfeasibleTarget,
    PendantTrees,
    RetryBudgetExhausted,
    amalgam_copies,
    free_amalgam,
    raise_degrees,
    regular_girth,
)
from .family import FamilyExhausted, variant_family
from .recipes import RECIPES, CaseRecipe, RecipeError, default_recipe
from .rigidity import (
    Chord,
    Pendant,
    ProbeIsEdge,
    ProbeOutsideCore,
    SweepResult,
    decoding_probes,
    find_probe_embedding,
    rigidity_check,
    rigidity_sweep,
)
from .witness import NON_MONOTONE, RecipeMismatch, Witness, build_witness, is_truncation_of

__all__ = [
    "Builder",
    "CaseRecipe",
    "Chord",
    "ExtraEdges",
    "FamilyExhausted",
    "InconsistentGlue",
    "InfeasibleTarget",
    "NON_MONOTONE",
    "Pendant",
    "PendantTrees",
    "ProbeIsEdge",
    "ProbeOutsideCore",
    "RECIPES",
    "RecipeError",
    "RecipeMismatch",
    "RetryBudgetExhausted",
    "SweepResult",
    "Witness",
    "amalgam_copies",
    "build_witness",
    "decoding_probes",
    "default_recipe",
    "find_probe_embedding",
    "free_amalgam",
    "is_truncation_of",
    "raise_degrees",
    "regular_girth",
    "rigidity_check",
    "rigidity_sweep",
    "variant_family",
]
