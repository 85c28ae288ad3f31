"""
Graph and Vertex-Set Algebra

Simple undirected graphs over qubit vertices 0..n-1, stored as one bitset
row per vertex. Every correlator rule reduces to symmetric differences of
these rows, so the set algebra lives here too.
"""

import enum
import logging
from dataclasses import dataclass
from functools import reduce

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VertexSet:
    """Subset of a universe of n vertices, held as an int bitmask."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Universe size must be non-negative, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"Bitmask {self.bits:#x} has members outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n, members=()):
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"Vertex {v} out of range for universe of size {n}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def full(cls, n):
        return cls(n, (1 << n) - 1)

    def __contains__(self, v):
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def __iter__(self):
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self):
        return bin(self.bits).count('1')

    def __bool__(self):
        return self.bits != 0

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"Mismatched universes: {self.n} vs {other.n}")

    def __xor__(self, other):
        return sym_diff(self, other)

    def __or__(self, other):
        self._check(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __and__(self, other):
        self._check(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __sub__(self, other):
        self._check(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def with_vertex(self, v):
        return self | VertexSet.of(self.n, [v])

    def without_vertex(self, v):
        return self - VertexSet.of(self.n, [v])

    def members(self):
        return list(self)

    def __repr__(self):
        return f"VertexSet({self.members()})"


def sym_diff(a, b):
    """
    Symmetric difference (a ∪ b) \\ (a ∩ b).

    Raises:
        ValueError: If the two sets live in universes of different size
    """
    a._check(b)
    return VertexSet(a.n, a.bits ^ b.bits)


def sym_diff_all(n, sets):
    """△ over an iterable of sets; ∅ for an empty iterable."""
    return reduce(sym_diff, sets, VertexSet(n))


class PairRelation(enum.Enum):
    """Neighbourhood relations that make a two-point correlator nonzero."""

    TWINS = 'twins'
    ADJACENT_TWINS = 'adjacent_twins'
    # first vertex of the pair is a leaf hanging off the second
    LEAF_FIRST = 'leaf_of(nu->mu)'
    LEAF_SECOND = 'leaf_of(mu->nu)'


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; adj[v] is the open neighbourhood N(v)."""

    n: int
    adj: tuple

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"Expected {self.n} adjacency rows, got {len(self.adj)}")
        for v, row in enumerate(self.adj):
            if row.n != self.n:
                raise ValueError(f"Row {v} has universe {row.n}, expected {self.n}")
            if v in row:
                raise ValueError(f"Self-loop on vertex {v}")
            for u in row:
                if v not in self.adj[u]:
                    raise ValueError(f"Asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n, edges):
        """
        Build a graph from an edge iterable.

        Raises:
            ValueError: On self-loops, repeated edges or out-of-range vertices
        """
        rows = [0] * n
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"Edge ({a}, {b}) out of range for {n} vertices")
            if a == b:
                raise ValueError(f"Self-loop on vertex {a}")
            if rows[a] >> b & 1:
                raise ValueError(f"Repeated edge ({a}, {b})")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(n, tuple(VertexSet(n, bits) for bits in rows))

    @classmethod
    def empty(cls, n):
        return cls(n, tuple(VertexSet(n) for _ in range(n)))

    @classmethod
    def from_networkx(cls, nx_graph):
        """Convert a networkx graph, relabelling nodes 0..n-1 in sorted order."""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in nx_graph.edges()))

    def edges(self):
        """Sorted list of (a, b) with a < b."""
        return [(a, b) for a in range(self.n) for b in self.adj[a] if a < b]

    @property
    def edge_count(self):
        return sum(len(row) for row in self.adj) // 2

    def _check_vertex(self, v):
        if not 0 <= v < self.n:
            raise ValueError(f"Vertex {v} out of range for graph on {self.n} vertices")

    def with_edge_flipped(self, a, b):
        """Copy with edge (a, b) toggled."""
        self._check_vertex(a)
        self._check_vertex(b)
        if a == b:
            raise ValueError(f"Cannot flip self-loop on vertex {a}")
        edges = set(self.edges()) ^ {(min(a, b), max(a, b))}
        return Graph.from_edges(self.n, sorted(edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def neighbors(g, v):
    """
    Open neighbourhood N(v).

    Raises:
        ValueError: If v is not a vertex of g
    """
    g._check_vertex(v)
    return g.adj[v]


def closed_neighbors(g, v):
    return neighbors(g, v).with_vertex(v)


def degree(g, v):
    return len(neighbors(g, v))


def odd_degree_vertices(g):
    return [v for v in range(g.n) if degree(g, v) % 2]


def is_regular(g):
    return len({degree(g, v) for v in range(g.n)}) <= 1


def predicates(g, nu, mu):
    """
    Classify the pair (nu, mu) by neighbourhood relation.

    Relations are reported independently; an empty set means none holds.

    Args:
        g: Graph
        nu: First vertex
        mu: Second vertex, distinct from nu

    Returns:
        frozenset: PairRelation members that hold

    Raises:
        ValueError: If nu == mu or either is out of range
    """
    n_nu = neighbors(g, nu)
    n_mu = neighbors(g, mu)
    if nu == mu:
        raise ValueError(f"Pair relation needs two distinct vertices, got {nu} twice")

    found = set()
    if n_nu == n_mu:
        found.add(PairRelation.TWINS)
    if n_nu.with_vertex(nu) == n_mu.with_vertex(mu):
        found.add(PairRelation.ADJACENT_TWINS)
    if n_nu == VertexSet.of(g.n, [mu]):
        found.add(PairRelation.LEAF_FIRST)
    if n_mu == VertexSet.of(g.n, [nu]):
        found.add(PairRelation.LEAF_SECOND)
    return frozenset(found)


def remove_vertex(g, a):
    """
    Isolate vertex a, keeping it in the universe so qubit indices stay put.

    Raises:
        ValueError: If a is out of range
    """
    g._check_vertex(a)
    return Graph.from_edges(g.n, [(u, v) for u, v in g.edges() if a not in (u, v)])


def internal_edge_count(g, s):
    """Number of edges with both endpoints in s."""
    if s.n != g.n:
        raise ValueError(f"Vertex set universe {s.n} does not match graph size {g.n}")
    return sum(len(g.adj[v] & s) for v in s) // 2


def handshake_parity_holds(g):
    return len(odd_degree_vertices(g)) % 2 == 0
