"""Exhaustive, exact audits of the retrieval scheme.

Every verdict here is decided by integer arithmetic over complete outcome
enumerations — no sampling, no floating point, no tolerances. A joint
distribution is a table mapping outcome tuples to integer counts;
independence is checked by cross-multiplication (``count(a,b) * total ==
count(a) * count(b)`` for every cell), and per-server views are compared as
count tables for exact equality.

Audited constraints:

* reliability — summing all answers yields the target message, for every
  joint realization of messages, pads and mask coefficients;
* user privacy — each server's view (its query, its answer, its stored
  messages and pads) has exactly the same distribution whichever message is
  being retrieved;
* database privacy — the user's whole view (all queries, all answers, the
  mask coefficients, plus every message and pad the user could have been
  given out of band, except the pads of the probed messages) is exactly
  independent of the messages it should not learn.

State spaces grow as ``q^(3·K·L)``; a budget guard refuses enumerations
beyond a configurable outcome count rather than silently auditing a subset.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .field import PrimeField
from .graph import Graph
from .protocol import (
    ServerStore,
    SystemState,
    run_round_with_coeffs,
    server_answer_slot,
    server_query,
    state_from_values,
)

DEFAULT_BUDGET = 2**24


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the outcome budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"exhaustive audit requires {required} outcomes, "
            f"exceeding the budget of {budget}"
        )


# ---------------------------------------------------------------------------
# exact distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactDistribution:
    """A finite distribution held as integer counts over hashable outcomes."""

    counts: dict
    total: int

    def __post_init__(self):
        if self.total != sum(self.counts.values()):
            raise ValueError("total does not match the sum of counts")
        if any(c <= 0 for c in self.counts.values()):
            raise ValueError("counts must be positive")

    @classmethod
    def from_outcomes(cls, outcomes) -> "ExactDistribution":
        counts = Counter(outcomes)
        return cls(dict(counts), sum(counts.values()))

    def marginal(self, project) -> "ExactDistribution":
        counts = Counter()
        for outcome, count in self.counts.items():
            counts[project(outcome)] += count
        return ExactDistribution(dict(counts), self.total)

    def support(self):
        return self.counts.keys()


@dataclass(frozen=True)
class IndependenceWitness:
    """A cell where the joint counts fail the product test."""

    left: object
    right: object
    pair_count: int
    left_count: int
    right_count: int
    total: int

    def to_dict(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "pair_count": self.pair_count,
            "left_count": self.left_count,
            "right_count": self.right_count,
            "total": self.total,
        }


def _pair_marginals(pairs: ExactDistribution):
    left_counts = Counter()
    right_counts = Counter()
    for (left, right), count in pairs.counts.items():
        left_counts[left] += count
        right_counts[right] += count
    return left_counts, right_counts


def independence_witness(pairs: ExactDistribution):
    """First cell violating ``count(l,r)·total == count(l)·count(r)``, or None.

    Outcomes of ``pairs`` must be ``(left, right)`` tuples. The scan covers
    the full product of the two marginal supports, so a structurally missing
    cell (joint count zero where both marginals are positive) is caught.
    """
    left_counts, right_counts = _pair_marginals(pairs)
    for left in sorted(left_counts):
        cl = left_counts[left]
        for right in sorted(right_counts):
            cr = right_counts[right]
            if pairs.counts.get((left, right), 0) * pairs.total != cl * cr:
                return IndependenceWitness(
                    left, right, pairs.counts.get((left, right), 0), cl, cr, pairs.total
                )
    return None


def is_independent(pairs: ExactDistribution) -> bool:
    """Exact zero-mutual-information verdict for a paired distribution."""
    return independence_witness(pairs) is None


def mutual_information_terms(pairs: ExactDistribution):
    """The mutual information as an exact sum of ``p * log2(ratio)`` terms.

    Returns ``(p, ratio)`` pairs of Fractions; the information is zero
    exactly when every ratio equals one, which is how the verdict functions
    decide without ever evaluating a logarithm.
    """
    left_counts, right_counts = _pair_marginals(pairs)
    terms = []
    for (left, right), count in sorted(pairs.counts.items()):
        p = Fraction(count, pairs.total)
        ratio = Fraction(count * pairs.total, left_counts[left] * right_counts[right])
        terms.append((p, ratio))
    return terms


def mutual_information_bits(pairs: ExactDistribution) -> float:
    """Float convenience value in bits; verdicts never depend on it."""
    return sum(float(p) * math.log2(ratio) for p, ratio in mutual_information_terms(pairs))


# ---------------------------------------------------------------------------
# exhaustive transcript enumeration
# ---------------------------------------------------------------------------


def state_space_size(graph: Graph, field: PrimeField, message_length: int, pad_length=None) -> int:
    """Number of joint realizations of messages, pads and mask coefficients."""
    if pad_length is None:
        pad_length = message_length
    q = field.modulus
    k = graph.n_edges
    return q ** (k * message_length + k * pad_length + k * message_length)


def _ensure_budget(graph, field, message_length, pad_length, budget):
    required = state_space_size(graph, field, message_length, pad_length)
    if required > budget:
        raise BudgetExceededError(required, budget)


def iter_transcript_outcomes(graph, field, message_length, target, pad_length=None):
    """Yield one outcome per joint realization, driving the protocol module.

    Outcomes are ``(messages, pads, coefficients, queries, answers)`` nested
    tuples: everything the user and the servers jointly produce once the
    messages, the pads and the per-slot mask coefficients are fixed.
    """
    if pad_length is None:
        pad_length = message_length
    k = graph.n_edges
    for messages in itertools.product(field.iter_vectors(message_length), repeat=k):
        for pads in itertools.product(field.iter_vectors(pad_length), repeat=k):
            state = state_from_values(graph, field, message_length, messages, pads)
            for coeffs in itertools.product(field.iter_vectors(k), repeat=message_length):
                transcript = run_round_with_coeffs(state, target, coeffs)
                yield (messages, pads, coeffs, transcript.queries, transcript.answers)


def enumerate_transcripts(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    target: int,
    *,
    pad_length=None,
    budget: int = DEFAULT_BUDGET,
) -> ExactDistribution:
    """The exact joint distribution of one round, one outcome per realization.

    Messages, pads and mask coefficients are uniform and independent, so
    every realization has the same probability and appears with count 1.
    """
    if pad_length is None:
        pad_length = message_length
    _ensure_budget(graph, field, message_length, pad_length, budget)
    counts = {
        outcome: 1
        for outcome in iter_transcript_outcomes(
            graph, field, message_length, target, pad_length
        )
    }
    return ExactDistribution(counts, len(counts))


# ---------------------------------------------------------------------------
# audit checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check: str
    instance: dict
    passed: bool
    enumerated: int
    witness: dict | None

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "passed": self.passed,
            "enumerated": self.enumerated,
            "witness": self.witness,
        }


def _resolve_targets(graph: Graph, targets) -> list[int]:
    if targets is None:
        return list(range(1, graph.n_edges + 1))
    targets = [int(t) for t in targets]
    for t in targets:
        graph._check_edge(t)
    return targets


def check_reliability(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    *,
    budget: int = DEFAULT_BUDGET,
    pad_length=None,
    drop_server=None,
    targets=None,
) -> list[CheckResult]:
    """Verify decode == target message over every joint realization, per target.

    The per-slot draws are independent and identically structured, so the
    joint space is the product of identical single-slot spaces (one variant
    with a pad symbol, one without when pads are shorter than messages): a
    decode error exists in the joint space exactly when one exists in a slot
    space. Each distinct slot space is enumerated in full.

    ``drop_server`` excludes one server's answer from decoding; it exists as
    a negative control and makes the check fail with a witness.
    """
    if pad_length is None:
        pad_length = message_length
    _ensure_budget(graph, field, message_length, pad_length, budget)
    if drop_server is not None:
        graph._check_vertex(drop_server)
    q = field.modulus
    k = graph.n_edges
    servers = [n for n in range(1, graph.n_vertices + 1) if n != drop_server]
    held = {n: graph.incident_edges(n) for n in servers}
    signs = {n: [graph.edge_sign(n, e) for e in held[n]] for n in servers}

    slot_variants = []
    if pad_length > 0:
        slot_variants.append(True)
    if pad_length < message_length:
        slot_variants.append(False)

    results = []
    for target in _resolve_targets(graph, targets):
        failure = None
        enumerated = 0
        for padded in slot_variants:
            pad_space = list(field.iter_vectors(k)) if padded else [None]
            pad_totals = []
            for pads in pad_space:
                if pads is None:
                    pad_totals.append((None, 0))
                    continue
                total = 0
                for n in servers:
                    for sign, e in zip(signs[n], held[n]):
                        total += sign * pads[e - 1]
                pad_totals.append((pads, total % q))
            for coeffs in field.iter_vectors(k):
                queries = {
                    n: server_query(
                        graph, field, target, n, [coeffs[e - 1] for e in held[n]]
                    )
                    for n in servers
                }
                for messages in field.iter_vectors(k):
                    dot_sum = 0
                    for n in servers:
                        for c, e in zip(queries[n], held[n]):
                            dot_sum += c * messages[e - 1]
                    expected = messages[target - 1]
                    for pads, pad_total in pad_totals:
                        enumerated += 1
                        if (dot_sum + pad_total) % q != expected:
                            failure = failure or (coeffs, messages, pads, padded)
            if failure:
                break
        witness = None
        if failure:
            witness = _reliability_witness(
                graph, field, message_length, pad_length, target, drop_server, failure
            )
        results.append(
            CheckResult(
                check="reliability",
                instance={
                    "target": target,
                    "slots": message_length,
                    "joint_space": state_space_size(graph, field, message_length, pad_length),
                },
                passed=failure is None,
                enumerated=enumerated,
                witness=witness,
            )
        )
    return results


def _reliability_witness(graph, field, message_length, pad_length, target, drop_server, failure):
    """Replay one failing slot realization through the protocol module."""
    coeffs, messages, pads, padded = failure
    slot = 0 if padded else pad_length
    k = graph.n_edges
    full_messages = [
        tuple(messages[e] if t == slot else 0 for t in range(message_length))
        for e in range(k)
    ]
    full_pads = [
        tuple(
            pads[e] if (padded and t == slot) else 0 for t in range(pad_length)
        )
        for e in range(k)
    ]
    coeff_slots = [
        tuple(coeffs if t == slot else (0,) * k) for t in range(message_length)
    ]
    state = state_from_values(graph, field, message_length, full_messages, full_pads)
    transcript = run_round_with_coeffs(state, target, coeff_slots)
    answers = [
        a
        for n, a in enumerate(transcript.answers, start=1)
        if n != drop_server
    ]
    decoded = tuple(
        sum(a[t] for a in answers) % field.modulus for t in range(message_length)
    )
    return {
        "coefficients": [list(c) for c in coeff_slots],
        "messages": [list(m) for m in full_messages],
        "pads": [list(p) for p in full_pads],
        "decoded": list(decoded),
        "expected": list(full_messages[target - 1]),
    }


def server_view_table(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    target: int,
    server: int,
    *,
    pad_length=None,
    mask_queries: bool = True,
) -> ExactDistribution:
    """Exact distribution of one server's view of a round.

    The view is ``(queries per slot, answer, stored messages, stored
    pads)``. It is a function of only the variables on the server's own
    incident edges, and every other message, pad and coefficient scales all
    counts by one common factor, so enumerating the incident-edge variables
    reproduces the joint marginal exactly (up to that factor, which is the
    same for every target).

    ``mask_queries=False`` sends the raw selector with no mask coefficients
    — a sabotaged scheme used as a negative control.
    """
    if pad_length is None:
        pad_length = message_length
    graph._check_edge(target)
    held = graph.incident_edges(server)
    delta = len(held)
    store_signs = tuple(graph.edge_sign(server, e) for e in held)
    if mask_queries:
        query_space = [
            tuple(
                server_query(graph, field, target, server, coeffs)
                for coeffs in slot_coeffs
            )
            for slot_coeffs in itertools.product(
                field.iter_vectors(delta), repeat=message_length
            )
        ]
    else:
        query_space = [_raw_selector_queries(graph, field, target, server, message_length)]
    table = Counter()
    for queries in query_space:
        for messages in itertools.product(
            field.iter_vectors(message_length), repeat=delta
        ):
            for pads in itertools.product(field.iter_vectors(pad_length), repeat=delta):
                store = ServerStore(server, held, store_signs, messages, pads)
                answer = tuple(
                    server_answer_slot(store, queries[t], field, t)
                    for t in range(message_length)
                )
                table[(queries, answer, messages, pads)] += 1
    return ExactDistribution(dict(table), sum(table.values()))


def check_user_privacy(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    *,
    budget: int = DEFAULT_BUDGET,
    pad_length=None,
    mask_queries: bool = True,
) -> list[CheckResult]:
    """Compare each server's view distribution across all retrieval targets.

    For every server, the view table of every target is compared for exact
    count-table equality against the target-1 table; equality is
    transitive, so every pair of targets is covered.

    ``mask_queries=False`` is a negative control that sends the raw selector
    (no mask coefficients); the check must then fail at the selector-holding
    servers.
    """
    if pad_length is None:
        pad_length = message_length
    _ensure_budget(graph, field, message_length, pad_length, budget)
    results = []
    for server in range(1, graph.n_vertices + 1):
        tables = {
            target: server_view_table(
                graph,
                field,
                message_length,
                target,
                server,
                pad_length=pad_length,
                mask_queries=mask_queries,
            )
            for target in range(1, graph.n_edges + 1)
        }
        for target in range(2, graph.n_edges + 1):
            witness = None
            if tables[target] != tables[1]:
                witness = _table_difference_witness(
                    tables[1].counts, tables[target].counts
                )
            results.append(
                CheckResult(
                    check="user-privacy",
                    instance={"server": server, "target": target, "reference": 1},
                    passed=witness is None,
                    enumerated=tables[target].total,
                    witness=witness,
                )
            )
    return results


def _raw_selector_queries(graph, field, target, server, message_length):
    """Sabotaged queries: the bare unit selector, no mask coefficients."""
    held = graph.incident_edges(server)
    query = [0] * len(held)
    _, larger = graph.message_holders(target)
    if server == larger:
        query[held.index(target)] = 1
    return tuple(tuple(query) for _ in range(message_length))


def _table_difference_witness(reference: Counter, other: Counter) -> dict:
    keys = sorted(set(reference) | set(other))
    for key in keys:
        if reference.get(key, 0) != other.get(key, 0):
            return {
                "view": repr(key),
                "reference_count": reference.get(key, 0),
                "target_count": other.get(key, 0),
            }
    raise AssertionError("tables compared unequal but no differing cell found")


def check_database_privacy(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    *,
    budget: int = DEFAULT_BUDGET,
    pad_length=None,
    targets=None,
) -> list[CheckResult]:
    """Exact independence of undesired messages from the user's whole view.

    For every target and every non-empty subset of the other messages, the
    subset's contents are paired against everything the user sees or could
    be handed out of band: all answers, all queries, the mask coefficients,
    every pad except the probed subset's own, and every message except the
    target and the subset. The verdict is the cross-multiplication test on
    the full enumeration; a failure comes with the violating cell.
    """
    if pad_length is None:
        pad_length = message_length
    _ensure_budget(graph, field, message_length, pad_length, budget)
    k = graph.n_edges
    results = []
    for target in _resolve_targets(graph, targets):
        realizations = list(
            iter_transcript_outcomes(graph, field, message_length, target, pad_length)
        )
        others = [e for e in range(1, k + 1) if e != target]
        for size in range(1, len(others) + 1):
            for subset in itertools.combinations(others, size):
                chosen = set(subset)
                pairs = Counter()
                for messages, pads, coeffs, queries, answers in realizations:
                    left = tuple(messages[e - 1] for e in subset)
                    right = (
                        answers,
                        queries,
                        tuple(pads[e - 1] for e in range(1, k + 1) if e not in chosen),
                        tuple(
                            messages[e - 1]
                            for e in range(1, k + 1)
                            if e not in chosen and e != target
                        ),
                        coeffs,
                    )
                    pairs[(left, right)] += 1
                dist = ExactDistribution(dict(pairs), len(realizations))
                witness = independence_witness(dist)
                results.append(
                    CheckResult(
                        check="database-privacy",
                        instance={"target": target, "subset": list(subset)},
                        passed=witness is None,
                        enumerated=len(realizations),
                        witness=witness.to_dict() if witness else None,
                    )
                )
    return results


# ---------------------------------------------------------------------------
# assembled audits
# ---------------------------------------------------------------------------


def randomness_ratio(state: SystemState) -> Fraction:
    """Pad symbols consumed per message symbol retrieved."""
    return Fraction(state.pad_length, state.message_length)


@dataclass(frozen=True)
class AuditReport:
    graph_name: str
    modulus: int
    message_length: int
    pad_length: int
    budget: int
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_name,
            "modulus": self.modulus,
            "message_length": self.message_length,
            "pad_length": self.pad_length,
            "budget": self.budget,
            "all_passed": self.all_passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def run_audit(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    *,
    budget: int = DEFAULT_BUDGET,
    pad_length=None,
    graph_name: str = "graph",
    targets=None,
) -> AuditReport:
    """Run all three checks over every target (and every server / subset).

    ``targets`` restricts the per-target reliability and database-privacy
    checks; user privacy always compares every target, since it is a
    statement about pairs of them.
    """
    if pad_length is None:
        pad_length = message_length
    checks = []
    checks.extend(
        check_reliability(
            graph, field, message_length, budget=budget, pad_length=pad_length,
            targets=targets,
        )
    )
    checks.extend(
        check_user_privacy(
            graph, field, message_length, budget=budget, pad_length=pad_length
        )
    )
    checks.extend(
        check_database_privacy(
            graph, field, message_length, budget=budget, pad_length=pad_length,
            targets=targets,
        )
    )
    return AuditReport(
        graph_name=graph_name,
        modulus=field.modulus,
        message_length=message_length,
        pad_length=pad_length,
        budget=budget,
        checks=tuple(checks),
    )
