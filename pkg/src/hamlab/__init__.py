"""Digraph Hamiltonicity laboratory.

Bitset digraphs, the classical degree conditions for spanning cycles, a
triple degree-sum condition with its sharpness margin, constructive
cycle/path lemmas with validated witnesses, seeded generators, and
exhaustive/sampled verification campaigns over small digraph spaces.
"""

from .conditions import (
    AkMargin,
    ConditionReport,
    ConditionVerdict,
    TripleViolation,
    ak_margin,
    bgy_18,
    bjgl_16,
    bjgl_17,
    condition_a_k,
    condition_report,
    ghouila_houri,
    lemma35_holds,
    meyniel,
    min_degree_semidegree,
    woodall,
)
from .cycles import (
    Bypass,
    CycleSpectrum,
    ExtensionResult,
    LemmaViolation,
    absorb_path_into_cycle,
    cycle_spectrum,
    cycles_from_external_vertex,
    extend_maximally,
    find_c_bypass,
    find_cycle_of_length,
    hamiltonian_bypass,
    hamiltonian_cycle,
    insert_vertex,
    longest_non_hamiltonian_cycle,
    merge_path,
    pre_hamiltonian_cycle,
)
from .digraph import (
    CycleWitness,
    Digraph,
    GraphError,
    HypothesisUnmet,
    ParseError,
    PathWitness,
    adjacent,
    build,
    converse,
    degree_toward,
    degrees,
    from_rows,
    induced,
    is_strong,
    isomorphic_small,
    mask_of,
    parse,
    recognize_kstar,
    serialize,
)
from .generators import (
    EnumerationCursor,
    GiveUpError,
    SplitMix64,
    derived_seed,
    enum_labeled,
    enum_tournaments,
    gen_directed_cycle,
    gen_kstar,
    gen_kstar_minus_arc,
    gen_random_strong,
    gen_two_cliques,
)
from .harness import (
    CampaignError,
    CampaignResult,
    CampaignSpec,
    CheckpointError,
    ClassificationRecord,
    Counterexample,
    ExceptionClass,
    audit_sharpness,
    checkpoint_load,
    checkpoint_save,
    classify,
    merge_results,
    run_campaign,
    run_sharded,
)

__all__ = [
    "AkMargin",
    "Bypass",
    "CampaignError",
    "CampaignResult",
    "CampaignSpec",
    "CheckpointError",
    "ClassificationRecord",
    "ConditionReport",
    "ConditionVerdict",
    "Counterexample",
    "CycleSpectrum",
    "CycleWitness",
    "Digraph",
    "EnumerationCursor",
    "ExceptionClass",
    "ExtensionResult",
    "GiveUpError",
    "GraphError",
    "HypothesisUnmet",
    "LemmaViolation",
    "ParseError",
    "PathWitness",
    "SplitMix64",
    "TripleViolation",
    "absorb_path_into_cycle",
    "adjacent",
    "ak_margin",
    "audit_sharpness",
    "bgy_18",
    "bjgl_16",
    "bjgl_17",
    "build",
    "checkpoint_load",
    "checkpoint_save",
    "classify",
    "condition_a_k",
    "condition_report",
    "converse",
    "cycle_spectrum",
    "cycles_from_external_vertex",
    "degree_toward",
    "degrees",
    "derived_seed",
    "enum_labeled",
    "enum_tournaments",
    "extend_maximally",
    "find_c_bypass",
    "find_cycle_of_length",
    "from_rows",
    "gen_directed_cycle",
    "gen_kstar",
    "gen_kstar_minus_arc",
    "gen_random_strong",
    "gen_two_cliques",
    "ghouila_houri",
    "hamiltonian_bypass",
    "hamiltonian_cycle",
    "induced",
    "insert_vertex",
    "is_strong",
    "isomorphic_small",
    "lemma35_holds",
    "longest_non_hamiltonian_cycle",
    "mask_of",
    "merge_path",
    "merge_results",
    "meyniel",
    "min_degree_semidegree",
    "parse",
    "pre_hamiltonian_cycle",
    "recognize_kstar",
    "run_campaign",
    "run_sharded",
    "serialize",
    "woodall",
]
