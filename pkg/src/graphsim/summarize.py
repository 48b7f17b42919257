"""Graph summarization: hub decomposition, candidate growth, MDL admission.

The pipeline follows three phases: decompose the graph into small-diameter
seed components by repeated hub extraction, grow and merge structure
candidates of all four kinds from those seeds, then greedily admit
candidates whenever structure bits plus the refitted data bits beat the
current data bits. All tie-breaks go to the lowest node or candidate
index, so summaries are deterministic for identical inputs.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field, asdict

from . import codec, maxent
from .errors import InputError
from .structures import (
    Biclique,
    Clique,
    Model,
    Star,
    Starclique,
    StructureKind,
    from_graph,
    size_key,
    structure_to_json,
)

_EPS = 1e-9


@dataclass
class SummarizerConfig:
    # None = 10 normally, 3 for graphs under small_graph_n nodes
    min_component_size: int | None = None
    max_structures: int = 100
    max_rejections: int = 300
    merge_overlap: float = 0.9
    clique_attach_frac: float = 0.5
    star_spoke_degree_frac: float = 0.05
    star_prune_base: float = 0.1
    star_prune_step: float = 0.01
    biclique_seed_cap: int = 5
    biclique_min_left: int = 3
    biclique_min_right: int = 5
    dense_frac: float = 0.5
    sparse_frac: float = 0.05
    rejection_mode: str = "total"  # or "consecutive"
    merge_denominator: str = "min"  # or "union"
    exact_clique_limit: int = 200
    small_graph_n: int = 500
    small_min_size: int = 3
    fit_tol: float = 1e-6
    fit_max_iter: int = 500

    def __post_init__(self):
        for name in ("max_structures", "max_rejections", "biclique_seed_cap",
                     "biclique_min_left", "biclique_min_right"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be >= 1")
        for name in ("merge_overlap", "clique_attach_frac",
                     "star_spoke_degree_frac", "dense_frac", "sparse_frac"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InputError(f"{name} must lie in [0, 1]")
        if self.rejection_mode not in ("total", "consecutive"):
            raise InputError("rejection_mode must be 'total' or 'consecutive'")
        if self.merge_denominator not in ("min", "union"):
            raise InputError("merge_denominator must be 'min' or 'union'")

    def effective_min_size(self, n: int) -> int:
        if self.min_component_size is not None:
            return self.min_component_size
        return self.small_min_size if n < self.small_graph_n else 10


def _at_least(count, frac, size) -> bool:
    return count >= frac * size - _EPS


def _at_most(count, frac, size) -> bool:
    return count <= frac * size + _EPS


def _more_than(count, frac, size) -> bool:
    return count > frac * size + _EPS


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------


def _components(nodes, adj):
    """Connected components of `nodes` under `adj`, as a list of sets."""
    seen = set()
    comps = []
    for start in nodes:
        if start in seen or not adj[start] and False:
            continue
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    comp.add(v)
                    frontier.append(v)
        comps.append(comp)
    return comps


def decompose(g, cfg: SummarizerConfig) -> list:
    """Hub-extraction seeds: small-diameter components, largest first.

    Repeatedly takes the globally largest residual component, extracts its
    highest-degree node v together with v's residual neighbors as a seed,
    and deletes v's edges. Stops once no component reaches the size
    threshold. Only the popped component is re-partitioned, so the cost
    stays local to the region the extraction touched.
    """
    min_size = cfg.effective_min_size(g.n)
    adj = [set(neigh) for neigh in g.adj]
    heap = []
    for comp in _components(range(g.n), adj):
        if len(comp) >= min_size:
            heapq.heappush(heap, (-len(comp), min(comp), sorted(comp)))
    seeds = []
    while heap:
        _, _, comp_nodes = heapq.heappop(heap)
        v = min(comp_nodes, key=lambda u: (-len(adj[u]), u))
        seed = {v} | adj[v]
        seeds.append(seed)
        for u in adj[v]:
            adj[u].discard(v)
        adj[v].clear()
        remaining = [u for u in comp_nodes if u != v]
        for comp in _components(remaining, adj):
            if len(comp) >= min_size:
                heapq.heappush(heap, (-len(comp), min(comp), sorted(comp)))
    return seeds


# ---------------------------------------------------------------------------
# Candidate generation helpers
# ---------------------------------------------------------------------------


def _greedy_mis(g, nodes) -> list:
    """Maximal independent set, greedy lowest-degree-first.

    Min-degree greedy maximizes the set size, which matters because seed
    components are hub-plus-neighbors: any MIS that admits the hub
    collapses to a single node and starves the two-sided generators.
    """
    chosen = []
    blocked = set()
    for v in sorted(nodes, key=lambda u: (g.degree(u), u)):
        if v in blocked:
            continue
        chosen.append(v)
        blocked.add(v)
        blocked |= g.adj[v]
    return chosen


def _top_by_degree(g, nodes, cap) -> list:
    return sorted(nodes, key=lambda v: (-g.degree(v), v))[:cap]


def _neighbor_counts(g, targets, exclude) -> dict:
    """For nodes outside `exclude`: how many neighbors they have in `targets`."""
    counts: dict = {}
    for t in targets:
        for v in g.adj[t]:
            if v not in exclude:
                counts[v] = counts.get(v, 0) + 1
    return counts


def max_clique(g, nodes, exact_limit: int = 200) -> list:
    """Maximum clique of the induced subgraph on `nodes`.

    Exact branch and bound with a greedy-coloring bound up to
    `exact_limit` nodes, greedy extension from the highest-degree seeds
    above that. Deterministic either way.
    """
    node_set = set(nodes)
    nbr = {v: g.adj[v] & node_set for v in node_set}
    if not node_set:
        return []
    k = len(node_set)
    if sum(len(s) for s in nbr.values()) == k * (k - 1):
        return sorted(node_set)  # the seed itself is complete
    if k <= exact_limit:
        return _max_clique_exact(node_set, nbr)
    return _max_clique_greedy(node_set, nbr)


def _max_clique_exact(node_set, nbr) -> list:
    # greedy result as the initial bound; replaced only by strictly
    # larger cliques, so the output stays deterministic
    best: list = _max_clique_greedy(node_set, nbr)

    def color_order(p):
        classes: list = []
        for v in sorted(p):
            for cls in classes:
                if not nbr[v] & cls:
                    cls.add(v)
                    break
            else:
                classes.append({v})
        out = []
        for color, cls in enumerate(classes, start=1):
            for v in sorted(cls):
                out.append((v, color))
        return out

    def expand(r, p):
        nonlocal best
        if not p:
            if len(r) > len(best):
                best = list(r)
            return
        for v, color in reversed(color_order(p)):
            if len(r) + color <= len(best):
                return
            r.append(v)
            expand(r, p & nbr[v])
            r.pop()
            p.remove(v)

    expand([], set(node_set))
    return best


def _max_clique_greedy(node_set, nbr) -> list:
    order = sorted(node_set, key=lambda v: (-len(nbr[v]), v))
    best: list = []
    for seed in order[:3]:
        clique = [seed]
        cands = set(nbr[seed])
        for v in order:
            if v in cands:
                clique.append(v)
                cands &= nbr[v]
                if not cands:
                    break
        if len(clique) > len(best):
            best = clique
    return best


# ---------------------------------------------------------------------------
# Candidate generators, one per structure kind
# ---------------------------------------------------------------------------


class _Boundary:
    """Neighbor counts into two growing sides, for nodes outside both.

    Keeps the per-candidate scans local: adding a node costs O(deg) and
    the growth loops only ever iterate over the current boundary.
    """

    def __init__(self, g, left, right):
        self.g = g
        self.left = left
        self.right = right
        self.to_left = _neighbor_counts(g, left, left | right)
        self.to_right = _neighbor_counts(g, right, left | right)

    def add(self, node, side) -> None:
        side.add(node)
        self.to_left.pop(node, None)
        self.to_right.pop(node, None)
        target = self.to_left if side is self.left else self.to_right
        for u in self.g.adj[node]:
            if u in self.left or u in self.right:
                continue
            target[u] = target.get(u, 0) + 1


def grow_clique(seed, g, cfg: SummarizerConfig):
    nodes = set(max_clique(g, seed, cfg.exact_clique_limit))
    if not nodes:
        return None
    counts = _neighbor_counts(g, nodes, nodes)
    while True:
        cands = [
            v for v, c in counts.items()
            if _at_least(c, cfg.clique_attach_frac, len(nodes))
        ]
        if not cands:
            break
        w = min(cands, key=lambda v: (-g.degree(v), v))
        nodes.add(w)
        counts.pop(w)
        for u in g.adj[w]:
            if u not in nodes:
                counts[u] = counts.get(u, 0) + 1
    if len(nodes) < cfg.effective_min_size(g.n):
        return None
    return from_graph(StructureKind.CLIQUE, g, nodes=nodes)


def grow_star(seed, g, cfg: SummarizerConfig):
    seed = set(seed)
    sub_deg = {v: len(g.adj[v] & seed) for v in seed}
    hub = min(seed, key=lambda v: (-sub_deg[v], v))
    # spokes must be adjacent to the hub or the star pattern is broken
    spokes = (seed - {hub}) & g.adj[hub]
    internal = {u: len(g.adj[u] & spokes) for u in spokes}
    i = 0
    while spokes:
        k = len(spokes)
        offenders = [
            u for u in spokes
            if _more_than(internal[u], cfg.star_spoke_degree_frac, k)
        ]
        if not offenders:
            break
        frac = min(cfg.star_prune_base + cfg.star_prune_step * i, 1.0)
        drop = max(1, math.ceil(frac * len(offenders) - _EPS))
        offenders.sort(key=lambda u: (-internal[u], u))
        for victim in offenders[:drop]:
            spokes.discard(victim)
            internal.pop(victim, None)
            for u in g.adj[victim]:
                if u in internal:
                    internal[u] -= 1
        i += 1
    if 1 + len(spokes) < cfg.effective_min_size(g.n) or not spokes:
        return None
    return from_graph(StructureKind.STAR, g, hub=hub, spokes=spokes)


def grow_biclique(seed, g, cfg: SummarizerConfig):
    right = set(_top_by_degree(g, _greedy_mis(g, seed), cfg.biclique_seed_cap))
    if len(right) < cfg.biclique_min_right:
        return None
    counts = _neighbor_counts(g, right, right)
    lp = [v for v, c in counts.items()
          if _at_least(c, cfg.dense_frac, len(right))]
    left = set(_top_by_degree(g, _greedy_mis(g, lp), cfg.biclique_seed_cap))
    if len(left) < cfg.biclique_min_left:
        return None

    boundary = _Boundary(g, left, right)

    def addition(own, own_counts, other, other_counts):
        best = None
        for v, c in other_counts.items():
            if not _at_least(c, cfg.dense_frac, len(other)):
                continue
            if not _at_most(own_counts.get(v, 0), cfg.sparse_frac, len(own)):
                continue
            key = (-c, v)
            if best is None or key < best:
                best = key
        return None if best is None else best[1]

    while True:
        changed = False
        v = addition(left, boundary.to_left, right, boundary.to_right)
        if v is not None:
            boundary.add(v, left)
            changed = True
        v = addition(right, boundary.to_right, left, boundary.to_left)
        if v is not None:
            boundary.add(v, right)
            changed = True
        if not changed:
            break
    if len(left) + len(right) < cfg.effective_min_size(g.n):
        return None
    return from_graph(StructureKind.BICLIQUE, g, left=left, right=right)


def grow_starclique(seed, g, cfg: SummarizerConfig):
    left = set(max_clique(g, seed, cfg.exact_clique_limit))
    # the core must be a real clique; the biclique left floor applies
    if len(left) < cfg.biclique_min_left:
        return None
    counts = _neighbor_counts(g, left, left)
    rp = [v for v, c in counts.items()
          if _at_least(c, cfg.dense_frac, len(left))]
    right = set(_greedy_mis(g, rp))
    if not right:
        return None
    boundary = _Boundary(g, left, right)
    while True:
        changed = False
        cands = [
            (boundary.to_right.get(v, 0), v)
            for v, c in boundary.to_left.items()
            if _at_least(c, cfg.dense_frac, len(left))
            and _at_least(boundary.to_right.get(v, 0), cfg.dense_frac, len(right))
        ]
        if cands:
            boundary.add(min(cands, key=lambda cv: (-cv[0], cv[1]))[1], left)
            changed = True
        cands = [
            (c, v) for v, c in boundary.to_left.items()
            if _at_least(c, cfg.dense_frac, len(left))
            and _at_most(boundary.to_right.get(v, 0), cfg.sparse_frac, len(right))
        ]
        if cands:
            boundary.add(min(cands, key=lambda cv: (-cv[0], cv[1]))[1], right)
            changed = True
        if not changed:
            break
    if len(left) + len(right) < cfg.effective_min_size(g.n):
        return None
    return from_graph(StructureKind.STARCLIQUE, g, left=left, right=right)


_GENERATORS = {
    StructureKind.CLIQUE: grow_clique,
    StructureKind.STAR: grow_star,
    StructureKind.BICLIQUE: grow_biclique,
    StructureKind.STARCLIQUE: grow_starclique,
}


# ---------------------------------------------------------------------------
# Merging
# ---------------------------------------------------------------------------


def _containment(a, b, mode) -> float:
    inter = len(a & b)
    denom = min(len(a), len(b)) if mode == "min" else len(a | b)
    return inter / denom if denom else 0.0


def _mergeable(s1, s2, cfg: SummarizerConfig) -> bool:
    thr = cfg.merge_overlap - _EPS
    mode = cfg.merge_denominator
    if s1.kind is StructureKind.CLIQUE:
        return _containment(s1.nodes, s2.nodes, mode) >= thr
    # both sides must overlap for the two-sided kinds
    return (
        _containment(s1.left, s2.left, mode) >= thr
        and _containment(s1.right, s2.right, mode) >= thr
    )


def _dedupe(cands, kind: StructureKind) -> list:
    seen = set()
    out = []
    for s in cands:
        if kind is StructureKind.CLIQUE:
            key = s.nodes
        elif kind is StructureKind.STAR:
            key = (s.hub, s.spokes)
        else:
            key = (s.left, s.right)
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def merge_candidates(cands, kind: StructureKind, cfg: SummarizerConfig, g):
    """Merge same-kind candidates with large node overlap; stars never merge."""
    cands = _dedupe(cands, kind)
    if kind is StructureKind.STAR:
        return list(cands)
    merged = list(cands)
    changed = True
    while changed:
        changed = False
        for i in range(len(merged)):
            for j in range(i + 1, len(merged)):
                if not _mergeable(merged[i], merged[j], cfg):
                    continue
                if kind is StructureKind.CLIQUE:
                    union = from_graph(
                        kind, g, nodes=merged[i].nodes | merged[j].nodes
                    )
                else:
                    left = merged[i].left | merged[j].left
                    right = merged[i].right | merged[j].right
                    if left & right:
                        continue  # sides would collide; keep both candidates
                    union = from_graph(kind, g, left=left, right=right)
                merged[i] = union
                del merged[j]
                changed = True
                break
            if changed:
                break
    return merged


# ---------------------------------------------------------------------------
# Greedy MDL admission
# ---------------------------------------------------------------------------


@dataclass
class SummaryReport:
    n: int
    m: int
    seeds: int
    candidates: int
    accepted: int
    rejected: int
    baseline_bits: float
    model_bits: float
    data_bits: float
    total_bits: float
    bits_saved: float
    compression_pct: float
    kind_census: dict
    ledger: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def generate_candidates(g, cfg: SummarizerConfig) -> list:
    """All merged candidates over all seeds and kinds, in generation order."""
    seeds = decompose(g, cfg)
    candidates = []
    for kind in StructureKind:
        grown = []
        for seed in seeds:
            cand = _GENERATORS[kind](seed, g, cfg)
            if cand is not None:
                grown.append(cand)
        candidates.extend(merge_candidates(grown, kind, cfg, g))
    return candidates, len(seeds)


def summarize(g, cfg: SummarizerConfig | None = None):
    """Discover an MDL-optimal structure summary; returns (Model, report).

    Candidates are tested largest first; a candidate is admitted exactly
    when its own encoding (with node IDs) plus the refitted data bits
    undercut the current data bits. Stops after max_structures admissions
    or max_rejections rejections (total by default).
    """
    cfg = cfg or SummarizerConfig()
    candidates, n_seeds = generate_candidates(g, cfg)
    order = sorted(
        range(len(candidates)),
        key=lambda i: (-size_key(candidates[i])[0],
                       -size_key(candidates[i])[1], i),
    )

    system = maxent.ConstraintSystem(g)
    state = maxent.fit(system, cfg.fit_tol, cfg.fit_max_iter)
    lambdas = state.lambdas
    baseline_data = maxent.data_length(g, state)
    baseline_bits = codec.model_length(Model(g.n, g.m, [])) + baseline_data

    accepted: list = []
    ledger: list = []
    structure_bits = 0.0
    data_bits = baseline_data
    rejections = 0
    for idx in order:
        if len(accepted) >= cfg.max_structures:
            break
        if rejections >= cfg.max_rejections:
            break
        cand = candidates[idx]
        bits_before = structure_bits + data_bits
        cand_bits = codec.structure_length(cand, g.n, with_ids=True)
        system.begin_trial()
        system.add_structure(cand)
        trial_state = maxent.fit(
            system, cfg.fit_tol, cfg.fit_max_iter, warm_start=lambdas
        )
        new_data = maxent.data_length(g, trial_state)
        take = cand_bits + new_data < data_bits
        if take:
            system.commit_trial()
            lambdas = trial_state.lambdas
            data_bits = new_data
            structure_bits += cand_bits
            accepted.append(cand)
            if cfg.rejection_mode == "consecutive":
                rejections = 0
        else:
            system.rollback_trial()
            rejections += 1
        ledger.append({
            "candidate": {
                "kind": cand.kind.value,
                "n_s": cand.n_s,
                "m_s": cand.total_edges,
            },
            "accepted": take,
            "bits_before": bits_before,
            "bits_after": structure_bits + data_bits,
        })

    model = Model(g.n, g.m, accepted)
    model_bits = codec.model_length(model, with_ids=True)
    total_bits = model_bits + data_bits
    report = SummaryReport(
        n=g.n,
        m=g.m,
        seeds=n_seeds,
        candidates=len(candidates),
        accepted=len(accepted),
        rejected=sum(1 for entry in ledger if not entry["accepted"]),
        baseline_bits=baseline_bits,
        model_bits=model_bits,
        data_bits=data_bits,
        total_bits=total_bits,
        bits_saved=baseline_bits - total_bits,
        compression_pct=100.0 * (1.0 - total_bits / baseline_bits),
        kind_census=model.kind_census(),
        ledger=ledger,
    )
    return model, report
