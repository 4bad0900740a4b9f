"""Symmetric private retrieval over 2-replicated graph storage.

Servers are vertices, messages are edges: each message and its pad live on
exactly the two endpoint servers of its edge. The package provides the
retrieval protocol, an exhaustive exact auditor for its reliability and
privacy constraints, an exact capacity calculator, and a CLI.
"""

from .auditor import (
    DEFAULT_BUDGET,
    AuditReport,
    BudgetExceededError,
    CheckResult,
    ExactDistribution,
    IndependenceWitness,
    check_database_privacy,
    check_reliability,
    check_user_privacy,
    enumerate_transcripts,
    independence_witness,
    is_independent,
    iter_transcript_outcomes,
    mutual_information_bits,
    mutual_information_terms,
    randomness_ratio,
    run_audit,
    server_view_table,
    state_space_size,
)
from .capacity import (
    CapacityReport,
    achievable_rate,
    capacity_report,
    is_cycle,
    is_path,
    pir_reference,
    spir_capacity,
)
from .field import PrimeField
from .graph import (
    FAMILIES,
    Graph,
    build_graph,
    complete_graph,
    cycle_graph,
    format_edge_list,
    from_family,
    incidence_matrix,
    parse_edge_list,
    path_graph,
    regular_graph,
    signed_incidence,
    star_graph,
)
from .protocol import (
    RoundTranscript,
    ServerStore,
    SystemState,
    decode,
    format_transcript,
    gen_queries,
    init_system,
    run_round,
    run_round_with_coeffs,
    server_answer,
    server_answer_slot,
    server_query,
    state_from_values,
    transcript_to_dict,
)

__version__ = "0.1.0"
