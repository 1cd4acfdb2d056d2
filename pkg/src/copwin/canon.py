"""Canonical labelling, isomorphism enumeration and automorphism orbits.

Canonical forms come from equitable-partition refinement with backtracking:
the certificate of a labelling is the tuple of relabelled neighbour masks and
the canonical labelling is the one maximizing it.  Automorphisms discovered
at equal-certificate leaves prune sibling branches.  The exact cell-selection
heuristic is unimportant as long as it is position-based, hence invariant
under relabelling.

`all_isomorphisms` deliberately does not share this machinery: it is a plain
complete backtracking over vertex maps, so the two routes can be checked
against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _solver
from .graph import Graph, GraphError, bits, write_graph6


# -- equitable refinement -----------------------------------------------------


def refine_cells(adj, cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered cell list.

    Cells split by neighbour counts against splitter cells; fragments are
    ordered by ascending count, which keeps the procedure invariant under
    relabelling.
    """
    arr = adj if isinstance(adj, np.ndarray) else np.array(adj, dtype=np.int64)
    out = _solver.refine(arr, np.array(cells, dtype=np.int64))
    return [int(c) for c in out]


class _CanonSearch:
    """Backtracking over individualized refinements, keeping the max certificate.

    Certificates are the relabelled neighbour masks as big-endian bytes, so
    byte order equals numeric order and leaves compare cheaply.
    """

    def __init__(self, adj: np.ndarray, init_cells: list[int]):
        self.adj = adj
        self.best_cert: bytes | None = None
        self.best_lab: list[int] | None = None
        self.first_cert: bytes | None = None
        self.first_lab: list[int] | None = None
        self.autos: list[tuple[int, ...]] = []
        self._rec(np.array(init_cells, dtype=np.int64), ())

    def _rec(self, cells: np.ndarray, prefix: tuple[int, ...]) -> None:
        cells = _solver.refine(self.adj, cells)
        target = -1
        cellmask = 0
        for i in range(cells.shape[0]):
            c = int(cells[i])
            if c & (c - 1):
                target = i
                cellmask = c
                break
        if target < 0:
            lab = [int(c).bit_length() - 1 for c in cells]
            cert = (
                _solver.leaf_certificate(self.adj, np.array(lab, dtype=np.int64))
                .astype(">i8")
                .tobytes()
            )
            if self.first_cert is None:
                self.first_cert, self.first_lab = cert, lab
            elif cert == self.first_cert:
                self._add_auto(self.first_lab, lab)
            if self.best_cert is None or cert > self.best_cert:
                self.best_cert, self.best_lab = cert, lab
            elif cert == self.best_cert and lab != self.best_lab:
                self._add_auto(self.best_lab, lab)
            return
        k = cells.shape[0]
        tried: list[int] = []
        for v in bits(cellmask):
            if tried and self._is_equivalent(v, tried, prefix):
                continue
            tried.append(v)
            sub = np.empty(k + 1, dtype=np.int64)
            sub[:target] = cells[:target]
            sub[target] = 1 << v
            sub[target + 1] = cellmask ^ (1 << v)
            sub[target + 2:] = cells[target + 1:]
            self._rec(sub, prefix + (v,))

    def _add_auto(self, lab_a: list[int], lab_b: list[int]) -> None:
        perm = [0] * len(lab_a)
        for i, v in enumerate(lab_a):
            perm[v] = lab_b[i]
        tperm = tuple(perm)
        if any(p != i for i, p in enumerate(tperm)) and tperm not in self.autos:
            self.autos.append(tperm)

    def _is_equivalent(self, v: int, tried: list[int], prefix: tuple[int, ...]) -> bool:
        # v may be skipped if an automorphism fixing the individualized prefix
        # pointwise maps it into the orbit of an already-tried branch
        usable = [a for a in self.autos if all(a[p] == p for p in prefix)]
        if not usable:
            return False
        orbit = 1 << v
        grew = True
        while grew:
            grew = False
            for a in usable:
                img = 0
                for w in bits(orbit):
                    img |= 1 << a[w]
                if img & ~orbit:
                    orbit |= img
                    grew = True
        return any(orbit >> u & 1 for u in tried)


# -- public canonical forms ----------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Ordered, labelled, pairwise-disjoint cells covering V(G)."""

    labels: tuple[str, ...]
    cells: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.labels) != len(self.cells):
            raise GraphError("partition labels and cells differ in length")
        seen = 0
        for c in self.cells:
            if c & seen:
                raise GraphError("partition cells overlap")
            seen |= c
        if seen != (1 << self.n) - 1:
            raise GraphError("partition cells do not cover the vertex set")

    def cell_of(self, v: int) -> int:
        for i, c in enumerate(self.cells):
            if c >> v & 1:
                return i
        raise GraphError(f"vertex {v} not in partition")


def _initial_cells(g: Graph, partition: Partition | None, restricted_mask: int) -> list[int]:
    if partition is None:
        base = [g.vertex_mask()] if g.n else []
    else:
        if partition.n != g.n:
            raise GraphError("partition is over a different vertex count")
        base = list(partition.cells)
    cells: list[int] = []
    for c in base:
        lo = c & ~restricted_mask
        hi = c & restricted_mask
        if lo:
            cells.append(lo)
        if hi:
            cells.append(hi)
    return cells


def canonical_certificate(
    g: Graph, partition: Partition | None = None, restricted_mask: int = 0
) -> tuple[bytes, list[int], list[tuple[int, ...]]]:
    """Max certificate (big-endian mask bytes), its labelling and automorphisms."""
    cells = _initial_cells(g, partition, restricted_mask)
    if not cells:
        return b"", [], []
    s = _CanonSearch(g.adj_array(), cells)
    assert s.best_cert is not None and s.best_lab is not None
    return s.best_cert, s.best_lab, s.autos


def canonical_form(
    g: Graph, partition: Partition | None = None, restricted_mask: int = 0
) -> str:
    """Label-invariant string key; color-aware when a partition/flag is given.

    Plain mode: graph6 of the canonically relabelled graph.  Color-aware mode
    appends the sizes of the (restriction-split) cells, which together with
    the color-preserving relabelling pins the colored isomorphism class.
    """
    cert, _, _ = canonical_certificate(g, partition, restricted_mask)
    masks = [int(x) for x in np.frombuffer(cert, dtype=">i8")]
    key = write_graph6(Graph(g.n, masks))
    if partition is not None or restricted_mask:
        sizes = ",".join(
            str(c.bit_count()) for c in _initial_cells(g, partition, restricted_mask)
        )
        key = f"{key}|{sizes}"
    return key


def canonical_labeling(g: Graph) -> tuple[int, ...]:
    """Canonical labelling as a tuple mapping position -> original vertex."""
    _, lab, _ = canonical_certificate(g)
    return tuple(lab)


# -- complete isomorphism enumeration -------------------------------------------


def _match_order(g: Graph) -> list[int]:
    # BFS from a max-degree vertex; each later vertex has an assigned neighbour
    if g.n == 0:
        return []
    order: list[int] = []
    seen = 0
    verts = sorted(range(g.n), key=g.degree, reverse=True)
    for seed in verts:
        if seen >> seed & 1:
            continue
        queue = [seed]
        seen |= 1 << seed
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in bits(g.neighbors_mask(v)):
                if not seen >> u & 1:
                    seen |= 1 << u
                    queue.append(u)
    return order


def all_isomorphisms(g1: Graph, g2: Graph) -> list[tuple[int, ...]]:
    """Every edge-preserving bijection V(g1) -> V(g2); empty when none exist."""
    n = g1.n
    if n != g2.n or sorted(g1.degrees()) != sorted(g2.degrees()):
        return []
    if n == 0:
        return [()]
    order = _match_order(g1)
    deg2mask = [0] * (n + 1)
    for u in range(n):
        deg2mask[g2.degree(u)] |= 1 << u
    assigned = [-1] * n
    full = g2.vertex_mask()
    out: list[tuple[int, ...]] = []

    def rec(i: int, used: int) -> None:
        if i == n:
            out.append(tuple(assigned))
            return
        v = order[i]
        cand = deg2mask[g1.degree(v)] & ~used & full
        nbrs = g1.neighbors_mask(v)
        for j in range(i):
            w = order[j]
            img = assigned[w]
            if nbrs >> w & 1:
                cand &= g2.neighbors_mask(img)
            else:
                cand &= ~g2.neighbors_mask(img)
            if not cand:
                return
        for u in bits(cand):
            assigned[v] = u
            rec(i + 1, used | 1 << u)
        assigned[v] = -1

    rec(0, 0)
    return out


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    return all_isomorphisms(g, g)


def automorphism_orbits(
    g: Graph, tuples: list[tuple[int, ...]]
) -> list[list[tuple[int, ...]]]:
    """Partition `tuples` into orbits under Aut(g); tuples must share arity."""
    if tuples and len({len(t) for t in tuples}) != 1:
        raise GraphError("tuples of mixed arity")
    autos = automorphisms(g)
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for t in tuples:
        rep = min(tuple(a[x] for x in t) for a in autos)
        groups.setdefault(rep, []).append(t)
    return [groups[k] for k in sorted(groups)]


def vertex_orbits(g: Graph) -> list[tuple[int, ...]]:
    """Automorphism orbits on vertices, each as a sorted tuple."""
    autos = automorphisms(g)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in autos:
        for v in range(g.n):
            rv, ra = find(v), find(a[v])
            if rv != ra:
                parent[ra] = rv
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return [tuple(sorted(vs)) for vs in groups.values()]


def vertex_order_classes(g: Graph) -> list[tuple[int, ...]]:
    """Automorphism classes of vertices, totally ordered.

    Primary key is degree ascending; ties break by the least canonical label
    occurring in the class, making runs reproducible.
    """
    orbits = vertex_orbits(g)
    lab = canonical_labeling(g)
    v_to_pos = [0] * g.n
    for i, v in enumerate(lab):
        v_to_pos[v] = i

    def key(cls: tuple[int, ...]) -> tuple[int, int]:
        return (g.degree(cls[0]), min(v_to_pos[v] for v in cls))

    return sorted(orbits, key=key)


def are_strongly_isomorphic(p1, p2) -> bool:
    """Strong isomorphism of partially-constructed graphs.

    Both arguments need `graph`, `cells` (a Partition) and `restricted_mask`
    attributes.  True iff an isomorphism exists fixing every cell setwise and
    the restricted set setwise.
    """
    if p1.graph.n != p2.graph.n:
        raise GraphError("partial graphs of different order")
    if p1.cells.labels != p2.cells.labels:
        raise GraphError("mismatched cell structure")
    if tuple(c.bit_count() for c in p1.cells.cells) != tuple(
        c.bit_count() for c in p2.cells.cells
    ):
        return False
    f1 = canonical_form(p1.graph, p1.cells, p1.restricted_mask)
    f2 = canonical_form(p2.graph, p2.cells, p2.restricted_mask)
    return f1 == f2
