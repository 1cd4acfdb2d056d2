"""Degree-bounded graph enumeration, one isomorphism class each.

Canonical augmentation: graphs grow one vertex at a time, and a child is kept
only when the new vertex lies in the child's canonical-deletion orbit, so the
search forest visits every isomorphism class exactly once and needs no global
dedup store.  The canonical deletion vertex is chosen among the vertices
whose removal keeps the graph in the family (non-cut vertices in connected
mode, all vertices otherwise): highest equitable-refinement cell first, ties
resolved by marked canonical certificates.

Degree caps prune during augmentation.  The minimum-degree bound only makes
sense on full-size graphs, so intermediate levels apply a feasibility
lookahead instead: a deficient vertex can gain at most one edge per future
vertex, and future vertices contribute at most max_degree edge endpoints
each.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from . import _solver
from .canon import canonical_certificate, canonical_form
from .graph import Graph, GraphError, bits

GEN_MAX_N = 16


@dataclass(frozen=True)
class GenSpec:
    """Target order with degree bounds; larger n must come from ingested files."""

    n: int
    min_degree: int = 0
    max_degree: int | None = None
    connected_only: bool = True

    def __post_init__(self):
        if not 1 <= self.n <= GEN_MAX_N:
            raise GraphError(f"in-repo generation supports 1 <= n <= {GEN_MAX_N}")
        cap = self.cap()
        if not 0 <= self.min_degree <= cap < self.n:
            raise GraphError("need 0 <= min_degree <= max_degree < n")

    def cap(self) -> int:
        return self.max_degree if self.max_degree is not None else self.n - 1


def _marked_cert(h: Graph, v: int) -> bytes:
    cert, _, _ = canonical_certificate(h, None, restricted_mask=1 << v)
    return cert


def _accepts(h: Graph, w: int, connected_only: bool) -> bool:
    """Canonical-deletion test: is the new vertex w a canonical choice?"""
    arr = h.adj_array()
    cells = _solver.refine(arr, np.array([h.vertex_mask()], dtype=np.int64))
    wbit = 1 << w
    pos = 0
    while not int(cells[pos]) & wbit:
        pos += 1
    later = 0
    for i in range(pos + 1, cells.shape[0]):
        later |= int(cells[i])
    peers = int(cells[pos]) ^ wbit
    if not later and not peers:
        return True
    if connected_only:
        elig = ~int(_solver.cut_vertices(arr)) & h.vertex_mask()
    else:
        elig = h.vertex_mask()
    if later & elig:
        return False
    peers &= elig
    if not peers:
        return True
    mw = _marked_cert(h, w)
    return all(_marked_cert(h, t) <= mw for t in bits(peers))


def _children(g: Graph, spec: GenSpec) -> list[Graph]:
    cap = spec.cap()
    k = g.n
    remaining = spec.n - k
    if spec.min_degree:
        total_deficit = 0
        for v in range(k):
            d = spec.min_degree - g.degree(v)
            if d > 0:
                if d > remaining:
                    return []
                total_deficit += d
        if total_deficit > remaining * cap:
            return []
    low = [v for v in range(k) if g.degree(v) < cap]
    final = remaining == 1
    required = 0
    if final and spec.min_degree:
        for v in range(k):
            if g.degree(v) < spec.min_degree:
                required |= 1 << v
    out: list[Graph] = []
    min_size = 1 if spec.connected_only else 0
    if final and spec.min_degree > min_size:
        min_size = spec.min_degree
    arr = g.adj_array()
    for size in range(min_size, min(cap, len(low)) + 1):
        for combo in combinations(low, size):
            s = 0
            for v in combo:
                s |= 1 << v
            if required & ~s:
                continue
            verdict = _solver.check_child(arr, s, spec.connected_only)
            if verdict == 0:
                continue
            h = g.with_vertex(s)
            if verdict == 2 and not _accepts(h, k, spec.connected_only):
                continue
            out.append(h)
    # a parent with symmetry can produce isomorphic siblings; a discrete
    # refinement certifies a trivial automorphism group, where that is
    # impossible
    parent_cells = _solver.refine(arr, np.array([g.vertex_mask()], dtype=np.int64))
    if parent_cells.shape[0] < g.n:
        seen: set[bytes] = set()
        uniq = []
        for h in out:
            key = canonical_certificate(h)[0]
            if key not in seen:
                seen.add(key)
                uniq.append(h)
        out = uniq
    return out


def _iter_from(g: Graph, spec: GenSpec) -> Iterator[Graph]:
    if g.n == spec.n:
        if g.min_degree() >= spec.min_degree:
            yield g
        return
    for child in _children(g, spec):
        yield from _iter_from(child, spec)


def iter_graphs(spec: GenSpec) -> Iterator[Graph]:
    """Stream each isomorphism class exactly once, in deterministic order."""
    yield from _iter_from(Graph.empty(1), spec)


def generate(spec: GenSpec, sink: Callable[[Graph], None] | None = None) -> int:
    """Drive the stream into `sink`; returns the total count."""
    count = 0
    for g in iter_graphs(spec):
        count += 1
        if sink is not None:
            sink(g)
    return count


def subtree_roots(spec: GenSpec, depth: int) -> list[Graph]:
    """Accepted search-tree nodes of the given order; independent subtrees.

    The subtrees below distinct roots are disjoint and their union is the
    full output stream, which makes them natural parallel work units and
    checkpointing shards.
    """
    if not 1 <= depth <= spec.n:
        raise GraphError("depth must be within 1..n")
    roots: list[Graph] = []

    def collect(g: Graph) -> None:
        if g.n == depth:
            roots.append(g)
            return
        for child in _children(g, spec):
            collect(child)

    collect(Graph.empty(1))
    return roots


def generate_subtree(
    spec: GenSpec, root: Graph, sink: Callable[[Graph], None] | None = None
) -> int:
    """Complete the stream below one subtree root; returns its count."""
    count = 0
    for g in _iter_from(root, spec):
        count += 1
        if sink is not None:
            sink(g)
    return count
