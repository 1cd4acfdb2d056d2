"""Compact undirected graphs on at most 32 vertices.

Vertices are 0..n-1 and every neighbourhood is a machine-word bitmask, which
keeps adjacency tests, set algebra and subgraph extraction at a handful of
integer operations.  All values are immutable; anything that "modifies" a
graph returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

MAX_VERTICES = 32


class GraphError(ValueError):
    """Raised for malformed graph constructions or records."""


def _mask_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph with bitmask neighbourhoods."""

    __slots__ = ("n", "_adj", "_arr")

    def __init__(self, n: int, adj: Iterable[int]):
        adj = tuple(adj)
        if n < 0 or n > MAX_VERTICES:
            raise GraphError(f"order {n} outside supported range 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError("adjacency length does not match order")
        full = (1 << n) - 1
        for v, m in enumerate(adj):
            if m & ~full:
                raise GraphError(f"neighbour set of {v} mentions vertices >= {n}")
            if m >> v & 1:
                raise GraphError(f"loop at vertex {v}")
        for v, m in enumerate(adj):
            for u in _mask_bits(m):
                if not adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self._adj = adj

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    # -- basic queries ----------------------------------------------------

    def neighbors_mask(self, u: int) -> int:
        return self._adj[u]

    def closed_mask(self, u: int) -> int:
        return self._adj[u] | (1 << u)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(_mask_bits(self._adj[u]))

    def degree(self, u: int) -> int:
        return self._adj[u].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self._adj)

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self._adj), default=0)

    def min_degree(self) -> int:
        return min((m.bit_count() for m in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self._adj[u] >> (u + 1) << (u + 1)
            for v in _mask_bits(m):
                out.append((u, v))
        return out

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def adj(self) -> tuple[int, ...]:
        return self._adj

    def adj_array(self) -> "np.ndarray":
        """Neighbour masks as an int64 array, cached (for compiled kernels)."""
        try:
            return self._arr
        except AttributeError:
            self._arr = np.array(self._adj, dtype=np.int64)
            return self._arr

    # -- functional updates ------------------------------------------------

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError("loop")
        adj = list(self._adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        g = object.__new__(Graph)
        g.n = self.n
        g._adj = tuple(adj)
        return g

    def with_vertex(self, nbrs_mask: int) -> "Graph":
        """Append vertex n adjacent to `nbrs_mask` (subset of 0..n-1)."""
        n = self.n
        if nbrs_mask >> n:
            raise GraphError("new neighbourhood mentions unknown vertices")
        if n + 1 > MAX_VERTICES:
            raise GraphError("capacity exceeded")
        bit = 1 << n
        adj = [m | bit if nbrs_mask >> v & 1 else m for v, m in enumerate(self._adj)]
        adj.append(nbrs_mask)
        g = object.__new__(Graph)
        g.n = n + 1
        g._adj = tuple(adj)
        return g

    def induced(self, keep_mask: int) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph induced by `keep_mask`; returns (graph, new->old vertex map)."""
        old = tuple(_mask_bits(keep_mask & self.vertex_mask()))
        pos = {v: i for i, v in enumerate(old)}
        adj = []
        for v in old:
            m = self._adj[v] & keep_mask
            adj.append(sum(1 << pos[u] for u in _mask_bits(m)))
        g = object.__new__(Graph)
        g.n = len(old)
        g._adj = tuple(adj)
        return g, old

    def delete(self, drop_mask: int) -> "Graph":
        g, _ = self.induced(self.vertex_mask() & ~drop_mask)
        return g

    def relabel(self, pos_to_old: tuple[int, ...]) -> "Graph":
        """Graph whose vertex i is `pos_to_old[i]` of self."""
        old_to_pos = [0] * self.n
        for i, v in enumerate(pos_to_old):
            old_to_pos[v] = i
        adj = []
        for v in pos_to_old:
            adj.append(sum(1 << old_to_pos[u] for u in _mask_bits(self._adj[v])))
        g = object.__new__(Graph)
        g.n = self.n
        g._adj = tuple(adj)
        return g

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


@dataclass(frozen=True)
class VertexSet:
    """Subset of a graph's vertices, with complement relative to V(G)."""

    mask: int
    n: int

    @classmethod
    def of(cls, vertices: Iterable[int], n: int) -> "VertexSet":
        return cls(sum(1 << v for v in set(vertices)), n)

    def complement(self) -> "VertexSet":
        return VertexSet(~self.mask & ((1 << self.n) - 1), self.n)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return _mask_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def as_set(self) -> frozenset[int]:
        return frozenset(_mask_bits(self.mask))


# -- graph6 ------------------------------------------------------------------


def write_graph6(g: Graph) -> str:
    """Encode as a graph6 record (no trailing newline)."""
    n = g.n
    out = [chr(n + 63)]
    bits = 0
    nbits = 0
    for j in range(1, n):
        col = g.neighbors_mask(j)
        for i in range(j):
            bits = bits << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(bits + 63))
                bits = nbits = 0
    if nbits:
        out.append(chr((bits << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 record (n <= 32); strict about padding and length."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 record")
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphError("multi-byte graph6 order not supported (n > 62)")
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"graph6 order {n} outside supported range")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise GraphError("graph6 record has wrong length")
    adj = [0] * n
    k = 0
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise GraphError(f"invalid graph6 byte {ch!r}")
        for b in range(5, -1, -1):
            if k >= nbits:
                if val >> b & 1:
                    raise GraphError("nonzero padding bits in graph6 record")
                continue
            if val >> b & 1:
                i, j = _bit_to_pair(k)
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, adj)


def _bit_to_pair(k: int) -> tuple[int, int]:
    # bit k of the column-ordered upper triangle: columns j=1,2,... rows i<j
    j = 1
    while k >= j:
        k -= j
        j += 1
    return k, j


# -- neighbourhood / connectivity --------------------------------------------


def closed_neighborhood(g: Graph, u: int) -> VertexSet:
    return VertexSet(g.closed_mask(u), g.n)


def is_connected(g: Graph) -> bool:
    """Connectivity; the empty graph counts as not connected."""
    if g.n == 0:
        return False
    seen = 1
    frontier = 1
    full = g.vertex_mask()
    while frontier:
        nxt = 0
        for v in _mask_bits(frontier):
            nxt |= g.neighbors_mask(v)
        frontier = nxt & ~seen
        seen |= frontier
        if seen == full:
            return True
    return seen == full


def connected_components(g: Graph) -> list[VertexSet]:
    """Maximal connected vertex sets, ordered by least vertex."""
    out = []
    left = g.vertex_mask()
    while left:
        start = left & -left
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in _mask_bits(frontier):
                nxt |= g.neighbors_mask(v)
            frontier = nxt & left & ~seen
            seen |= frontier
        out.append(VertexSet(seen, g.n))
        left &= ~seen
    return out


# -- corners ------------------------------------------------------------------


def find_corners(g: Graph) -> list[tuple[int, int]]:
    """All ordered pairs (x, u), x != u, with N(x) <= N[u].

    Adjacency of x and u is not required here; a vertex of degree 0 is a
    corner of every other vertex.
    """
    out = []
    for x in range(g.n):
        nx = g.neighbors_mask(x)
        for u in range(g.n):
            if u == x:
                continue
            if nx & ~g.closed_mask(u) == 0:
                out.append((x, u))
    return out


def corner_extensions(g: Graph, max_degree: int | None = None) -> list[Graph]:
    """All one-vertex corner additions to g, up to isomorphism.

    Each result H has a new vertex m with H - m = g, m cornered by some
    existing vertex, and max degree at most `max_degree` when given.
    """
    from .canon import canonical_form

    n = g.n
    cap = max_degree if max_degree is not None else n
    if g.max_degree() > cap:
        return []
    out: list[Graph] = []
    seen: set[str] = set()
    candidates: set[int] = set()
    for u in range(n):
        cm = g.closed_mask(u)
        members = list(_mask_bits(cm))
        for sub in range(1, 1 << len(members)):
            s = 0
            t = sub
            while t:
                low = t & -t
                s |= 1 << members[low.bit_length() - 1]
                t ^= low
            candidates.add(s)
    for s in candidates:
        if s.bit_count() > cap:
            continue
        if any(g.degree(v) + 1 > cap for v in _mask_bits(s)):
            continue
        h = g.with_vertex(s)
        # new vertex must actually be cornered by an old vertex
        if not any(s & ~h.closed_mask(u) == 0 for u in range(n)):
            continue
        key = canonical_form(h)
        if key not in seen:
            seen.add(key)
            out.append(h)
    return out


# -- stable sets ----------------------------------------------------------------


def strong_stable_sets(g: Graph) -> list[tuple[int, int, int]]:
    """Unordered triples of pairwise non-adjacent vertices with no common neighbour."""
    out = []
    for x in range(g.n):
        ax = g.neighbors_mask(x)
        for y in range(x + 1, g.n):
            if ax >> y & 1:
                continue
            common = ax & g.neighbors_mask(y)
            for z in range(y + 1, g.n):
                if (ax >> z | g.neighbors_mask(y) >> z) & 1:
                    continue
                if common & g.neighbors_mask(z) == 0:
                    out.append((x, y, z))
    return out


# -- planarity --------------------------------------------------------------


def is_planar(g: Graph) -> bool:
    """Planarity test: Euler-bound prefilter, then left-right planarity."""
    n, m = g.n, g.edge_count()
    if n <= 4:
        return True
    if m > 3 * n - 6:
        return False
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(range(n))
    nxg.add_edges_from(g.edges())
    ok, _ = nx.check_planarity(nxg, counterexample=False)
    return bool(ok)


# -- misc helpers used across modules -------------------------------------------


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for forests."""
    best: int | None = None
    for u, v in g.edges():
        # shortest u-v path avoiding the edge uv
        dist = {u: 0}
        frontier = [u]
        found = None
        while frontier and found is None:
            nxt = []
            for w in frontier:
                for x in _mask_bits(g.neighbors_mask(w)):
                    if w == u and x == v:
                        continue
                    if x not in dist:
                        dist[x] = dist[w] + 1
                        if x == v:
                            found = dist[x]
                            break
                        nxt.append(x)
                if found is not None:
                    break
            frontier = nxt
        if found is not None:
            cycle = found + 1
            if best is None or cycle < best:
                best = cycle
    return best


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask."""
    return _mask_bits(mask)
