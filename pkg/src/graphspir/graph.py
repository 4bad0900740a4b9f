"""Simple connected graphs used as storage topologies.

Vertices are servers, numbered ``1..n_vertices``. Edges are messages: the
message with index ``k`` (1-based position in the edge tuple) is replicated
on the two endpoint servers of edge ``k``. Edges are stored normalized as
``(u, v)`` with ``u < v`` and keep the order they were supplied in, so the
message indexing of a user-supplied graph is stable.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.n_vertices
        if not isinstance(n, int) or n < 2:
            raise ValueError(f"need at least 2 vertices, got {n!r}")
        seen = set()
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError(f"edge {edge!r} is not a pair")
            u, v = edge
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {edge} has an endpoint outside 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge {edge} is not normalized (expected u < v)")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {edge}")
            seen.add((u, v))
        if not self.edges:
            raise ValueError("graph has no edges")
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        adjacency = {v: [] for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        reached = {1}
        frontier = [1]
        while frontier:
            vertex = frontier.pop()
            for other in adjacency[vertex]:
                if other not in reached:
                    reached.add(other)
                    frontier.append(other)
        return len(reached) == self.n_vertices

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, vertex: int) -> int:
        self._check_vertex(vertex)
        return sum(1 for u, v in self.edges if vertex in (u, v))

    def incident_edges(self, vertex: int) -> tuple[int, ...]:
        """Ascending 1-based indices of the edges touching ``vertex``.

        These are the message indices held by the server at ``vertex``.
        """
        self._check_vertex(vertex)
        return tuple(
            k for k, (u, v) in enumerate(self.edges, start=1) if vertex in (u, v)
        )

    def message_holders(self, k: int) -> tuple[int, int]:
        """The two servers storing message ``k``, as ``(smaller, larger)``."""
        self._check_edge(k)
        return self.edges[k - 1]

    def edge_sign(self, vertex: int, k: int) -> int:
        """+1 at the smaller-indexed holder of edge ``k``, -1 at the larger."""
        u, v = self.message_holders(k)
        if vertex == u:
            return 1
        if vertex == v:
            return -1
        raise ValueError(f"vertex {vertex} does not hold message {k}")

    def is_regular(self):
        """The common degree if every vertex has the same one, else None."""
        degrees = {self.degree(v) for v in range(1, self.n_vertices + 1)}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def _check_vertex(self, vertex: int):
        if not (isinstance(vertex, int) and 1 <= vertex <= self.n_vertices):
            raise ValueError(f"no vertex {vertex!r} (graph has 1..{self.n_vertices})")

    def _check_edge(self, k: int):
        if not (isinstance(k, int) and 1 <= k <= self.n_edges):
            raise ValueError(f"no message {k!r} (graph has 1..{self.n_edges})")


def build_graph(n_vertices: int, edges) -> Graph:
    """Build a graph from possibly unordered edge pairs, preserving edge order."""
    normalized = []
    for edge in edges:
        u, v = edge
        if u > v:
            u, v = v, u
        normalized.append((u, v))
    return Graph(n_vertices, tuple(normalized))


def incidence_matrix(g: Graph) -> tuple[tuple[int, ...], ...]:
    """0/1 vertex-by-edge incidence table (row per server, column per message)."""
    table = [[0] * g.n_edges for _ in range(g.n_vertices)]
    for k, (u, v) in enumerate(g.edges):
        table[u - 1][k] = 1
        table[v - 1][k] = 1
    return tuple(tuple(row) for row in table)


def signed_incidence(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Incidence table with +1 at each edge's smaller endpoint and -1 at the larger.

    Every column carries exactly one +1 and one -1, so the column sums are
    zero; summing any quantity weighted by a column's signs over all
    vertices cancels. Decoding relies on exactly this.
    """
    table = [[0] * g.n_edges for _ in range(g.n_vertices)]
    for k, (u, v) in enumerate(g.edges):
        table[u - 1][k] = 1
        table[v - 1][k] = -1
    return tuple(tuple(row) for row in table)


# ---------------------------------------------------------------------------
# generators for the standard families
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices: edges (1,2), (2,3), ..., (n-1, n)."""
    if n < 2:
        raise ValueError(f"a path needs at least 2 vertices, got {n}")
    return Graph(n, tuple((v, v + 1) for v in range(1, n)))


def cycle_graph(n: int) -> Graph:
    """Cycle on ``n`` vertices, edges in traversal order.

    Message ``k < n`` sits between servers ``k`` and ``k+1`` and the closing
    message ``n`` between servers ``1`` and ``n``, so message indices follow
    the ring.
    """
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    edges = [(v, v + 1) for v in range(1, n)]
    edges.append((1, n))
    return Graph(n, tuple(edges))


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices with the hub at vertex ``n``."""
    if n < 2:
        raise ValueError(f"a star needs at least 2 vertices, got {n}")
    return Graph(n, tuple((v, n) for v in range(1, n)))


def complete_graph(n: int) -> Graph:
    """Complete graph on ``n`` vertices, edges in lexicographic order."""
    if n < 2:
        raise ValueError(f"a complete graph needs at least 2 vertices, got {n}")
    return Graph(n, tuple((u, v) for u in range(1, n) for v in range(u + 1, n + 1)))


def regular_graph(n: int, degree: int) -> Graph:
    """Connected circulant graph where every vertex has the given degree.

    Each vertex connects to its ``degree // 2`` nearest neighbours on both
    sides of a ring; when the degree is odd (which forces ``n`` even) the
    antipodal edge is added. Edges come out in lexicographic order.
    """
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    if degree >= n:
        raise ValueError(f"degree {degree} is not realizable on {n} vertices")
    if (n * degree) % 2 != 0:
        raise ValueError(f"no graph with {n} vertices can be {degree}-regular")
    edges = set()
    for v in range(1, n + 1):
        for offset in range(1, degree // 2 + 1):
            w = (v - 1 + offset) % n + 1
            edges.add((min(v, w), max(v, w)))
        if degree % 2 == 1:
            w = (v - 1 + n // 2) % n + 1
            edges.add((min(v, w), max(v, w)))
    return Graph(n, tuple(sorted(edges)))


FAMILIES = ("path", "cycle", "star", "complete", "regular")


def from_family(family: str, n: int, degree=None) -> Graph:
    """Build the canonical member of a named family."""
    if family == "path":
        return path_graph(n)
    if family == "cycle":
        return cycle_graph(n)
    if family == "star":
        return star_graph(n)
    if family == "complete":
        return complete_graph(n)
    if family == "regular":
        if degree is None:
            raise ValueError("the regular family needs a degree")
        return regular_graph(n, degree)
    raise ValueError(f"unknown family {family!r} (expected one of {FAMILIES})")


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    The first significant line is ``N K`` (vertex and edge counts), followed
    by exactly ``K`` lines ``u v``. Blank lines and ``#`` comments (full-line
    or trailing) are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: expected two integers, got {raw!r}")
    if not rows:
        raise ValueError("empty edge list")
    n_vertices, n_edges = rows[0]
    edges = rows[1:]
    if len(edges) != n_edges:
        raise ValueError(f"header declares {n_edges} edges but {len(edges)} follow")
    return build_graph(n_vertices, edges)


def format_edge_list(g: Graph) -> str:
    """Serialize to the edge-list format; round-trips through parse_edge_list."""
    lines = [f"{g.n_vertices} {g.n_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
