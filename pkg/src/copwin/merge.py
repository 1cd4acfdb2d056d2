"""Two-phase merging search for candidate 4-cop-win graphs.

Phase 1 glues G1 from list1 and G2 from list2 along an isomorphism of
G1-N[v1] with G2-N[v2], keeping the closed neighbourhoods of the chosen
non-adjacent pair v1, v2 distinct and topping their degrees up with fresh
common neighbours.  Phase 2 completes each base by adding the remaining
admissible edges vertex by vertex across N(v2), pruning with degree caps,
the restricted set R, and strong isomorphism among siblings.  A final filter
keeps only graphs whose every other max-degree neighbourhood deletion lands
back in list1.

Merged vertex layout: G1 keeps its labels 0..n1-1 (v1 among them), v2 is n1,
the d2 old neighbours of v2 follow, and the fresh common neighbours take the
highest indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .canon import Partition, all_isomorphisms, canonical_form, vertex_order_classes
from .graph import Graph, GraphError, bits, is_connected

CELL_LABELS = (
    "v1",
    "n1_only",
    "interior",
    "common_done",
    "common_todo",
    "n2_done",
    "n2_todo",
    "v2",
)


@dataclass(frozen=True)
class MergeConfig:
    """Inputs: target order, degrees of the glued pair, degree cap, graph lists.

    list1 members must have n - deg_v2 - 1 vertices and list2 members
    n - deg_v1 - 1; all connected with maximum degree at most delta.  The
    production campaigns feed 3-cop-win lists here, but cop numbers are the
    caller's concern, not a structural requirement.
    """

    n: int
    deg_v1: int
    deg_v2: int
    delta: int
    list1: tuple[Graph, ...]
    list2: tuple[Graph, ...]

    def __post_init__(self):
        if not 1 <= self.deg_v1 <= self.deg_v2:
            raise GraphError("need 1 <= deg_v1 <= deg_v2")
        if self.deg_v2 != self.delta:
            raise GraphError("deg_v2 must equal the degree cap delta")
        n1 = self.n - self.deg_v2 - 1
        n2 = self.n - self.deg_v1 - 1
        if n1 < 1 or n2 < 1:
            raise GraphError("orders leave no room for the glued parts")
        for g in self.list1:
            if g.n != n1:
                raise GraphError(f"list1 member of order {g.n}, expected {n1}")
            _check_member(g, self.delta)
        for g in self.list2:
            if g.n != n2:
                raise GraphError(f"list2 member of order {g.n}, expected {n2}")
            _check_member(g, self.delta)

    def order1(self) -> int:
        return self.n - self.deg_v2 - 1


def _check_member(g: Graph, delta: int) -> None:
    if not is_connected(g):
        raise GraphError("input lists must contain connected graphs")
    if g.max_degree() > delta:
        raise GraphError("input graph exceeds the degree cap")


@dataclass(frozen=True)
class PartialGraph:
    """A partially-constructed graph: (graph, ordered cells, restricted set).

    `cursor` counts the N(v2) vertices already processed in phase 2;
    provenance records (list1 index, list2 index, d1, d2, v1, v2).
    """

    graph: Graph
    cells: Partition
    restricted_mask: int
    cursor: int
    provenance: tuple[int, int, int, int, int, int]

    def v1(self) -> int:
        return self.provenance[4]

    def v2(self) -> int:
        return self.provenance[5]


@dataclass
class MergeRow:
    delta1: int
    d1: int
    g1_count: int
    base_count: int = 0
    final_count: int = 0
    cop_tallies: dict[str, int] = field(default_factory=dict)


@dataclass
class MergeReport:
    n: int
    delta: int
    deg_v1: int
    deg_v2: int
    rows: list[MergeRow]

    @property
    def base_count(self) -> int:
        return sum(r.base_count for r in self.rows)

    @property
    def final_count(self) -> int:
        return sum(r.final_count for r in self.rows)


# -- phase 1 -------------------------------------------------------------------


def _restricted_mask(g1: Graph, classes: list[tuple[int, ...]], v1: int, equal_degrees: bool) -> int:
    if not equal_degrees:
        return g1.vertex_mask()
    mask = 0
    seen_v1 = False
    for cls in classes:
        if seen_v1:
            for v in cls:
                mask |= 1 << v
        elif v1 in cls:
            seen_v1 = True
    return mask


def _cells_with(n, v1, n1only, interior, cdone, ctodo, ndone, ntodo, v2bit) -> Partition:
    return Partition(
        labels=CELL_LABELS,
        cells=(1 << v1, n1only, interior, cdone, ctodo, ndone, ntodo, v2bit),
        n=n,
    )


def _merge_one(
    cfg: MergeConfig,
    g1: Graph,
    g2: Graph,
    v1: int,
    v2: int,
    iso: tuple[int, ...],
    a_old: tuple[int, ...],
    b_old: tuple[int, ...],
    n2_list: tuple[int, ...],
) -> Graph | None:
    """Union of g1 and g2 under one interior identification, or None when a
    degree cap is hit."""
    n1 = g1.n
    v2_id = n1
    map2 = {v: n1 + 1 + j for j, v in enumerate(n2_list)}
    b_to_merged = {}
    for ai, bi in enumerate(iso):
        b_to_merged[b_old[bi]] = a_old[ai]
    edges = g1.edges()
    in_b = set(b_old)
    for x, y in g2.edges():
        if x in in_b and y in in_b:
            continue  # interior edges already present through g1

        def m(z: int) -> int:
            if z == v2:
                return v2_id
            if z in map2:
                return map2[z]
            return b_to_merged[z]

        edges.append((m(x), m(y)))
    d2 = len(n2_list)
    for j in range(cfg.deg_v2 - d2):
        c = n1 + 1 + d2 + j
        edges.append((c, v1))
        edges.append((c, v2_id))
    merged = Graph.from_edges(cfg.n, edges)
    if merged.max_degree() > cfg.delta:
        return None
    return merged


def phase1(
    cfg: MergeConfig,
    *,
    strong_dedup: bool = True,
    progress: Callable[[int], None] | None = None,
) -> list[PartialGraph]:
    """All base graphs, deduplicated by strong isomorphism within siblings.

    Explores every G1, G2, every (d1, d2) with d2 - d1 = deg_v2 - deg_v1,
    every v1/v2 up to automorphism with those degrees, and every
    identification isomorphism of the two interiors.  When deg_v1 = deg_v2
    and G1 already holds a vertex of maximum degree, only the top choice of
    v1 can survive the restricted-set rule, so the others are skipped.
    """
    equal = cfg.deg_v1 == cfg.deg_v2
    classes1 = [vertex_order_classes(g) for g in cfg.list1]
    classes2 = [vertex_order_classes(g) for g in cfg.list2]
    # interiors of list2 members, keyed by canonical form
    interior2: dict[str, list[tuple[int, int, Graph, tuple[int, ...], tuple[int, ...]]]] = {}
    for i2, g2 in enumerate(cfg.list2):
        for cls in classes2[i2]:
            v2 = cls[0]
            rest = g2.vertex_mask() & ~g2.closed_mask(v2)
            sub, old = g2.induced(rest)
            interior2.setdefault(canonical_form(sub), []).append(
                (i2, v2, sub, old, tuple(sorted(g2.neighbors(v2))))
            )
    bases: list[PartialGraph] = []
    for i1, g1 in enumerate(cfg.list1):
        shortcut = equal and g1.max_degree() == cfg.delta
        for d1 in range(1, cfg.deg_v1 + 1):
            d2 = d1 + cfg.deg_v2 - cfg.deg_v1
            if not 1 <= d2 <= cfg.deg_v2:
                continue
            if not equal and d1 >= cfg.deg_v1:
                continue  # the pair must share a fresh common neighbour
            if shortcut and d1 != cfg.deg_v1:
                continue
            v1_classes = [cls for cls in classes1[i1] if g1.degree(cls[0]) == d1]
            if shortcut:
                v1_classes = [cls for cls in v1_classes if cls == classes1[i1][-1]]
            for v1_cls in v1_classes:
                v1 = v1_cls[0]
                rmask = _restricted_mask(g1, classes1[i1], v1, equal)
                rest = g1.vertex_mask() & ~g1.closed_mask(v1)
                a_sub, a_old = g1.induced(rest)
                a_key = canonical_form(a_sub)
                group: dict[str, PartialGraph] = {}
                for i2, v2, b_sub, b_old, n2_list in interior2.get(a_key, ()):
                    if cfg.list2[i2].degree(v2) != d2:
                        continue
                    for iso in all_isomorphisms(a_sub, b_sub):
                        merged = _merge_one(
                            cfg, g1, cfg.list2[i2], v1, v2, iso, a_old, b_old, n2_list
                        )
                        if merged is None:
                            continue
                        bad = False
                        for v in bits(rmask):
                            if merged.degree(v) == cfg.delta:
                                bad = True
                                break
                        if bad:
                            continue
                        cells = _cells_with(
                            cfg.n,
                            v1,
                            g1.neighbors_mask(v1),
                            rest,
                            0,
                            sum(1 << c for c in range(g1.n + 1 + d2, cfg.n)),
                            0,
                            sum(1 << (g1.n + 1 + j) for j in range(d2)),
                            1 << g1.n,
                        )
                        pg = PartialGraph(
                            graph=merged,
                            cells=cells,
                            restricted_mask=rmask,
                            cursor=0,
                            provenance=(i1, i2, d1, d2, v1, g1.n),
                        )
                        if strong_dedup:
                            key = canonical_form(merged, cells, rmask)
                        else:
                            key = f"{len(group)}"
                        if key not in group:
                            group[key] = pg
                bases.extend(group.values())
                if progress is not None:
                    progress(len(bases))
    return bases


# -- phase 2 --------------------------------------------------------------------


def _a_order(base: PartialGraph) -> list[int]:
    cells = base.cells.cells
    commons = list(bits(cells[3] | cells[4]))
    n2 = list(bits(cells[5] | cells[6]))
    return commons + n2


def _step_cells(base: PartialGraph, order: list[int], done_count: int) -> Partition:
    cells = base.cells.cells
    common_all = cells[3] | cells[4]
    n2_all = cells[5] | cells[6]
    done = 0
    for a in order[:done_count]:
        done |= 1 << a
    return _cells_with(
        base.cells.n,
        base.v1(),
        cells[1],
        cells[2],
        common_all & done,
        common_all & ~done,
        n2_all & done,
        n2_all & ~done,
        cells[7],
    )


def _has_nonadjacent_max_pair(g: Graph, delta: int) -> bool:
    tops = [v for v in range(g.n) if g.degree(v) == delta]
    for i, u in enumerate(tops):
        for v in tops[i + 1:]:
            if not g.has_edge(u, v):
                return True
    return False


def phase2(
    base: PartialGraph,
    cfg: MergeConfig,
    list1_forms: set[str] | None = None,
    *,
    dedup_threshold: int = 1000,
) -> list[Graph]:
    """All completions of one base satisfying the output contract, deduplicated.

    Edges are only ever added from a common neighbour of the pair to anything
    outside {v1, v2}, or from N(v2)-only to N(v1)-only; each N(v2) vertex is
    processed once, never looking back at already-processed ones.
    """
    if list1_forms is None:
        list1_forms = {canonical_form(g) for g in cfg.list1}
    order = _a_order(base)
    v1, v2 = base.v1(), base.v2()
    n1_only = base.cells.cells[1]
    common_all = base.cells.cells[3] | base.cells.cells[4]
    rmask = base.restricted_mask
    full = base.graph.vertex_mask()
    unequal = cfg.deg_v1 < cfg.deg_v2
    pool = [base]
    for i, a in enumerate(order):
        step_cells = _step_cells(base, order, i + 1)
        is_common = bool(common_all >> a & 1)
        done_mask = 0
        for b in order[: i + 1]:
            done_mask |= 1 << b
        nxt: list[PartialGraph] = []
        for pg in pool:
            g = pg.graph
            if is_common:
                partners_mask = full & ~(1 << v1) & ~(1 << v2) & ~done_mask
            else:
                partners_mask = n1_only
            partners_mask &= ~g.neighbors_mask(a)
            budget = cfg.delta - g.degree(a)
            eligible = []
            for u in bits(partners_mask):
                du = g.degree(u)
                if du + 1 > cfg.delta:
                    continue
                if rmask >> u & 1 and du + 1 >= cfg.delta:
                    continue
                eligible.append(u)
            for size in range(0, min(budget, len(eligible)) + 1):
                for combo in combinations(eligible, size):
                    h = g
                    for u in combo:
                        h = h.with_edge(a, u)
                    if unequal and _has_nonadjacent_max_pair(h, cfg.delta):
                        continue
                    nxt.append(
                        PartialGraph(h, step_cells, rmask, i + 1, pg.provenance)
                    )
        if len(nxt) > dedup_threshold or i == len(order) - 1:
            uniq: dict[str, PartialGraph] = {}
            for pg in nxt:
                key = canonical_form(pg.graph, pg.cells, rmask)
                if key not in uniq:
                    uniq[key] = pg
            pool = list(uniq.values())
        else:
            pool = nxt
    finals: dict[str, Graph] = {}
    for pg in pool:
        g = pg.graph
        if not is_connected(g):
            continue
        ok = True
        for u in range(g.n):
            if u in (v1, v2) or g.degree(u) != cfg.delta:
                continue
            sub, _ = g.induced(full & ~g.closed_mask(u))
            if canonical_form(sub) not in list1_forms:
                ok = False
                break
        if ok:
            key = canonical_form(g)
            if key not in finals:
                finals[key] = g
    return list(finals.values())


# -- driver and contract audit ----------------------------------------------------


def run_merge(
    cfg: MergeConfig,
    sink: Callable[[Graph], None] | None = None,
    *,
    classifier: Callable[[Graph], str] | None = None,
    base_sink: Callable[[PartialGraph], None] | None = None,
    dedup_threshold: int = 1000,
) -> MergeReport:
    """Phase 1 then phase 2 for every base; streams finals, returns the tally.

    Rows are keyed like the published tables: by the maximum degree of G1 and
    the G1-degree d1 of v1.  When `classifier` is given (graph -> bucket
    label) the finals are classified as they stream.
    """
    list1_forms = {canonical_form(g) for g in cfg.list1}
    rows: dict[tuple[int, int], MergeRow] = {}
    g1_by_delta: dict[int, int] = {}
    for g in cfg.list1:
        g1_by_delta[g.max_degree()] = g1_by_delta.get(g.max_degree(), 0) + 1
    for base in phase1(cfg):
        if base_sink is not None:
            base_sink(base)
        delta1 = cfg.list1[base.provenance[0]].max_degree()
        d1 = base.provenance[2]
        row = rows.setdefault(
            (delta1, d1), MergeRow(delta1, d1, g1_by_delta.get(delta1, 0))
        )
        row.base_count += 1
        for g in phase2(base, cfg, list1_forms, dedup_threshold=dedup_threshold):
            row.final_count += 1
            if classifier is not None:
                bucket = classifier(g)
                row.cop_tallies[bucket] = row.cop_tallies.get(bucket, 0) + 1
            if sink is not None:
                sink(g)
    ordered = [rows[k] for k in sorted(rows, key=lambda t: (-t[0], -t[1]))]
    return MergeReport(cfg.n, cfg.delta, cfg.deg_v1, cfg.deg_v2, ordered)


def audit_final(g: Graph, cfg: MergeConfig, v1: int, v2: int) -> bool:
    """Recompute the output contract for a specific pair (v1, v2)."""
    list1_forms = {canonical_form(x) for x in cfg.list1}
    list2_forms = {canonical_form(x) for x in cfg.list2}
    if g.n != cfg.n or not is_connected(g) or g.max_degree() != cfg.deg_v2:
        return False
    if g.degree(v1) != cfg.deg_v1 or g.degree(v2) != cfg.deg_v2 or g.has_edge(v1, v2):
        return False
    full = g.vertex_mask()
    sub1, _ = g.induced(full & ~g.closed_mask(v2))
    sub2, _ = g.induced(full & ~g.closed_mask(v1))
    if canonical_form(sub1) not in list1_forms or canonical_form(sub2) not in list2_forms:
        return False
    for u in range(g.n):
        if u in (v1, v2) or g.degree(u) != cfg.delta:
            continue
        sub, _ = g.induced(full & ~g.closed_mask(u))
        if canonical_form(sub) not in list1_forms:
            return False
    if cfg.deg_v1 < cfg.deg_v2:
        if _has_nonadjacent_max_pair(g, cfg.delta):
            return False
        if g.neighbors_mask(v1) & g.neighbors_mask(v2) == 0:
            return False
    return True


def satisfies_output_contract(g: Graph, cfg: MergeConfig) -> bool:
    """True iff some non-adjacent pair (v1, v2) witnesses the output contract."""
    if g.n != cfg.n or not is_connected(g) or g.max_degree() != cfg.deg_v2:
        return False
    for v1 in range(g.n):
        if g.degree(v1) != cfg.deg_v1:
            continue
        for v2 in range(g.n):
            if v2 == v1 or g.degree(v2) != cfg.deg_v2 or g.has_edge(v1, v2):
                continue
            if audit_final(g, cfg, v1, v2):
                return True
    return False
