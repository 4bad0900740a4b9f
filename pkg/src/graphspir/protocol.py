"""Retrieval protocol over 2-replicated graph storage.

Each message lives on an edge of the storage graph and is replicated, along
with a uniformly random pad of the same shape, on the edge's two endpoint
servers. A retrieval round for one symbol slot works like this:

* the user draws one uniform mask coefficient per message;
* each server receives the signed, masked coefficients of the messages it
  holds (sign +1 at an edge's smaller endpoint, -1 at the larger), with 1
  added at the target message's coordinate on its larger-indexed holder;
* each server answers with the inner product of its query and its stored
  messages, plus the signed sum of its pads;
* the user adds up all answers. Both signed copies of every masked message
  term and every pad cancel, leaving exactly the target symbol.

Messages that are ``message_length`` symbols long are retrieved by running
the single-symbol round once per slot with fresh mask coefficients; pads are
consumed per slot as well. Download is one symbol per server per slot.
"""

import json
from dataclasses import dataclass

from .field import PrimeField
from .graph import Graph


@dataclass(frozen=True)
class ServerStore:
    """Everything one server knows: its held message indices (ascending),
    the signs of its incidence-row entries, and its message and pad copies
    aligned with those indices."""

    server: int
    held: tuple[int, ...]
    signs: tuple[int, ...]
    messages: tuple[tuple[int, ...], ...]
    pads: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SystemState:
    graph: Graph
    field: PrimeField
    message_length: int
    pad_length: int
    stores: tuple[ServerStore, ...]

    def store(self, server: int) -> ServerStore:
        if not 1 <= server <= self.graph.n_vertices:
            raise ValueError(f"no server {server!r}")
        return self.stores[server - 1]

    def message(self, k: int) -> tuple[int, ...]:
        """The stored message ``k`` (read from its smaller-indexed holder)."""
        holder, _ = self.graph.message_holders(k)
        store = self.stores[holder - 1]
        return store.messages[store.held.index(k)]

    def pad(self, k: int) -> tuple[int, ...]:
        holder, _ = self.graph.message_holders(k)
        store = self.stores[holder - 1]
        return store.pads[store.held.index(k)]


def state_from_values(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    messages,
    pads,
) -> SystemState:
    """Build a system state from explicit message and pad vectors.

    ``messages`` must hold one ``message_length``-symbol vector per edge;
    ``pads`` one vector per edge, all of one common length (the pad length,
    normally equal to ``message_length``). Both holders of an edge receive
    identical copies.
    """
    if message_length < 1:
        raise ValueError(f"message_length must be >= 1, got {message_length}")
    messages = tuple(tuple(m) for m in messages)
    pads = tuple(tuple(p) for p in pads)
    if len(messages) != graph.n_edges:
        raise ValueError(f"expected {graph.n_edges} messages, got {len(messages)}")
    if len(pads) != graph.n_edges:
        raise ValueError(f"expected {graph.n_edges} pads, got {len(pads)}")
    for m in messages:
        if len(m) != message_length:
            raise ValueError(f"message {m} is not {message_length} symbols long")
        for s in m:
            field.check(s)
    pad_length = len(pads[0]) if pads else 0
    for p in pads:
        if len(p) != pad_length:
            raise ValueError("pads must all have the same length")
        for s in p:
            field.check(s)
    if pad_length > message_length:
        raise ValueError("pads longer than messages are never consumed")
    stores = []
    for server in range(1, graph.n_vertices + 1):
        held = graph.incident_edges(server)
        stores.append(
            ServerStore(
                server=server,
                held=held,
                signs=tuple(graph.edge_sign(server, k) for k in held),
                messages=tuple(messages[k - 1] for k in held),
                pads=tuple(pads[k - 1] for k in held),
            )
        )
    return SystemState(graph, field, message_length, pad_length, tuple(stores))


def init_system(
    graph: Graph,
    field: PrimeField,
    message_length: int,
    rng,
    pad_length=None,
) -> SystemState:
    """Draw uniform messages and pads and place replicas on the holders.

    ``pad_length`` defaults to ``message_length`` (one fresh pad symbol per
    message symbol); smaller values leave the trailing symbol slots bare and
    exist to demonstrate that database privacy then breaks.
    """
    if pad_length is None:
        pad_length = message_length
    if not 0 <= pad_length <= message_length:
        raise ValueError(f"pad_length must be in 0..{message_length}, got {pad_length}")
    messages = []
    pads = []
    for _ in range(graph.n_edges):
        messages.append(field.sample_vector(rng, message_length))
        pads.append(field.sample_vector(rng, pad_length))
    return state_from_values(graph, field, message_length, messages, pads)


def server_query(
    graph: Graph,
    field: PrimeField,
    target: int,
    server: int,
    coeffs_held,
) -> tuple[int, ...]:
    """One server's query for one symbol slot.

    ``coeffs_held`` carries the user's mask coefficients for exactly the
    messages this server holds, aligned with its ascending held indices. The
    entries are signed with the server's incidence signs, and 1 is added at
    the target's coordinate if this server is the target's larger-indexed
    holder.
    """
    held = graph.incident_edges(server)
    coeffs_held = tuple(coeffs_held)
    if len(coeffs_held) != len(held):
        raise ValueError(
            f"server {server} holds {len(held)} messages, got {len(coeffs_held)} coefficients"
        )
    query = []
    for c, k in zip(coeffs_held, held):
        field.check(c)
        query.append(c if graph.edge_sign(server, k) == 1 else field.neg(c))
    _, larger = graph.message_holders(target)
    if server == larger:
        m = held.index(target)
        query[m] = field.add(query[m], 1)
    return tuple(query)


def gen_queries(graph: Graph, field: PrimeField, target: int, coeffs) -> tuple:
    """All servers' queries for one symbol slot.

    ``coeffs`` is the user's full vector of mask coefficients, one per
    message. Each server only ever sees the coefficients of its own held
    messages, signed, plus the selector increment at one holder.
    """
    graph._check_edge(target)
    coeffs = tuple(coeffs)
    if len(coeffs) != graph.n_edges:
        raise ValueError(f"expected {graph.n_edges} coefficients, got {len(coeffs)}")
    for c in coeffs:
        field.check(c)
    return tuple(
        server_query(
            graph,
            field,
            target,
            server,
            tuple(coeffs[k - 1] for k in graph.incident_edges(server)),
        )
        for server in range(1, graph.n_vertices + 1)
    )


def server_answer_slot(store: ServerStore, query, field: PrimeField, slot: int) -> int:
    """One server's answer symbol for one slot: query-message inner product
    plus the signed sum of its pad symbols (slots past the pad length have
    no pad contribution)."""
    query = tuple(query)
    if len(query) != len(store.held):
        raise ValueError(
            f"server {store.server} holds {len(store.held)} messages, got a length-{len(query)} query"
        )
    total = 0
    for coeff, message in zip(query, store.messages):
        total += field.check(coeff) * message[slot]
    for sign, pad in zip(store.signs, store.pads):
        if slot < len(pad):
            total += sign * pad[slot]
    return total % field.modulus


def server_answer(store: ServerStore, query, field: PrimeField) -> tuple[int, ...]:
    """Apply one query to every symbol slot of the server's stores."""
    n_slots = len(store.messages[0]) if store.messages else 0
    return tuple(server_answer_slot(store, query, field, t) for t in range(n_slots))


def decode(field: PrimeField, answers) -> tuple[int, ...]:
    """Sum all answers slot-wise; the signed terms cancel, leaving the target."""
    answers = [tuple(a) for a in answers]
    if not answers:
        raise ValueError("nothing to decode")
    length = len(answers[0])
    for a in answers:
        if len(a) != length:
            raise ValueError("answers disagree on symbol count")
    return tuple(field.sum(a[t] for a in answers) for t in range(length))


@dataclass(frozen=True)
class RoundTranscript:
    """Everything exchanged in one retrieval round.

    ``coefficients`` and ``queries`` are indexed per symbol slot (fresh mask
    coefficients every slot); ``answers`` per server, each
    ``message_length`` symbols.
    """

    target: int
    coefficients: tuple[tuple[int, ...], ...]
    queries: tuple
    answers: tuple[tuple[int, ...], ...]
    decoded: tuple[int, ...]
    downloaded_symbols: int


def run_round_with_coeffs(state: SystemState, target: int, coeffs_per_slot) -> RoundTranscript:
    """Run one round with the given per-slot mask coefficients (no drawing)."""
    graph, field = state.graph, state.field
    coeffs_per_slot = tuple(tuple(c) for c in coeffs_per_slot)
    if len(coeffs_per_slot) != state.message_length:
        raise ValueError(
            f"expected {state.message_length} coefficient vectors, got {len(coeffs_per_slot)}"
        )
    queries_per_slot = tuple(
        gen_queries(graph, field, target, coeffs) for coeffs in coeffs_per_slot
    )
    answers = tuple(
        tuple(
            server_answer_slot(store, queries_per_slot[t][store.server - 1], field, t)
            for t in range(state.message_length)
        )
        for store in state.stores
    )
    return RoundTranscript(
        target=target,
        coefficients=coeffs_per_slot,
        queries=queries_per_slot,
        answers=answers,
        decoded=decode(field, answers),
        downloaded_symbols=graph.n_vertices * state.message_length,
    )


def run_round(state: SystemState, target: int, rng) -> RoundTranscript:
    """Draw fresh mask coefficients for every symbol slot and run the round."""
    coeffs_per_slot = tuple(
        state.field.sample_vector(rng, state.graph.n_edges)
        for _ in range(state.message_length)
    )
    return run_round_with_coeffs(state, target, coeffs_per_slot)


def transcript_to_dict(t: RoundTranscript) -> dict:
    """JSON-ready view of a transcript (tuples become lists)."""
    return {
        "target": t.target,
        "mask_coefficients": [list(c) for c in t.coefficients],
        "queries": [[list(q) for q in slot] for slot in t.queries],
        "answers": [list(a) for a in t.answers],
        "decoded": list(t.decoded),
        "downloaded_symbols": t.downloaded_symbols,
    }


def format_transcript(t: RoundTranscript) -> str:
    """Canonical one-line JSON record of a round; byte-stable for a given
    state and coefficient sequence."""
    return json.dumps(transcript_to_dict(t), sort_keys=True, separators=(",", ":"))
