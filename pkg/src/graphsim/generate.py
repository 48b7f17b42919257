"""Seeded synthetic graphs: ER, BA, planted structures, composition grids.

Everything is reproducible from (parameters, seed). Planted structures are
realized exactly, and background noise is only laid down outside the
planted constraint regions, so ground truth stays exact after the overlay.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import Graph
from .maxent import _iter_region_pairs, structure_regions
from .structures import Biclique, Clique, Star, Starclique, StructureKind


def _distinct_sample(rng, limit: int, k: int) -> list:
    """k distinct ints from range(limit), deterministic given the rng state."""
    if k <= 0:
        return []
    if 3 * k >= limit:
        return sorted(int(x) for x in rng.permutation(limit)[:k])
    chosen: set = set()
    while len(chosen) < k:
        draw = rng.integers(0, limit, size=k - len(chosen))
        chosen.update(int(x) for x in draw)
    return sorted(chosen)


def er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): every pair independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    if n < 1:
        raise InputError("n must be positive")
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(n - 1):
        row = n - 1 - u
        k = int(rng.binomial(row, p)) if 0.0 < p < 1.0 else (row if p else 0)
        for w in _distinct_sample(rng, row, k):
            edges.append((u, u + 1 + w))
    return Graph(n, edges)


def ba(n: int, k: int, seed: int) -> Graph:
    """Barabasi-Albert preferential attachment, k edges per arriving node.

    Seed core is a k-node path; the first arrival connects to all k seed
    nodes, so m = (k-1) + (n-k)*k. Requires n >= k+2 to leave room for at
    least one preferential arrival.
    """
    if k < 1 or n < k + 2:
        raise InputError(f"ba requires 1 <= k <= n-2, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    edges = [(i, i + 1) for i in range(k - 1)]
    repeated: list = []
    for u, v in edges:
        repeated.extend((u, v))
    first = list(range(k))
    for t in first:
        edges.append((k, t))
    repeated.extend(first)
    repeated.extend([k] * k)
    for v in range(k + 1, n):
        targets: set = set()
        while len(targets) < k:
            targets.add(repeated[int(rng.integers(0, len(repeated)))])
        for t in sorted(targets):
            edges.append((v, t))
            repeated.append(t)
        repeated.extend([v] * k)
    return Graph(n, edges)


@dataclass(frozen=True)
class PlantSpec:
    """One structure to plant: kind plus per-kind sizes.

    sizes: clique (n_s,); star (spokes,); biclique/starclique (left, right).
    `start` pins the block's first node index; by default blocks are laid
    out consecutively and must stay disjoint unless allow_overlap is set.
    """

    kind: StructureKind
    sizes: tuple
    start: int | None = None

    def node_count(self) -> int:
        if self.kind is StructureKind.CLIQUE:
            return self.sizes[0]
        if self.kind is StructureKind.STAR:
            return self.sizes[0] + 1
        return self.sizes[0] + self.sizes[1]


def _realize(spec: PlantSpec, block: range):
    nodes = list(block)
    if spec.kind is StructureKind.CLIQUE:
        edges = list(itertools.combinations(nodes, 2))
        return Clique(frozenset(nodes), len(edges)), edges
    if spec.kind is StructureKind.STAR:
        hub, spokes = nodes[0], nodes[1:]
        edges = [(hub, s) for s in spokes]
        return Star(hub, frozenset(spokes), 0), edges
    n_l = spec.sizes[0]
    left, right = nodes[:n_l], nodes[n_l:]
    across = [(u, v) for u in left for v in right]
    edges = list(across)
    m_l = 0
    cls = Biclique
    if spec.kind is StructureKind.STARCLIQUE:
        within = list(itertools.combinations(left, 2))
        edges.extend(within)
        m_l = len(within)
        cls = Starclique
    return cls(frozenset(left), frozenset(right), m_l, 0, len(across)), edges


def plant(n: int, noise_p: float, specs, seed: int,
          allow_overlap: bool = False):
    """ER background plus exactly realized structures; returns (Graph, truth).

    Noise edges are sampled at rate noise_p but never inside any planted
    structure's constraint regions, so required edges and required
    non-edges both survive the overlay. Truth is the list of planted
    structures with their exact node sets and counts.
    """
    if not 0.0 <= noise_p <= 1.0:
        raise InputError(f"noise probability must lie in [0, 1], got {noise_p}")
    specs = [
        s if isinstance(s, PlantSpec) else PlantSpec(StructureKind(s[0]), tuple(s[1]))
        for s in specs
    ]
    cursor = 0
    truth = []
    edges = []
    forbidden: set = set()
    claimed: set = set()
    for spec in specs:
        size = spec.node_count()
        start = spec.start if spec.start is not None else cursor
        block = range(start, start + size)
        if block.stop > n:
            raise InputError("planted structures do not fit into n nodes")
        overlap = claimed.intersection(block)
        if overlap and not allow_overlap:
            raise InputError("planted blocks overlap; pass allow_overlap")
        claimed.update(block)
        if spec.start is None:
            cursor = start + size
        structure, planted_edges = _realize(spec, block)
        truth.append(structure)
        edges.extend(planted_edges)
        for tag, args, _ in structure_regions(structure):
            forbidden.update(_iter_region_pairs(tag, args, n))

    rng = np.random.default_rng(seed)
    if noise_p > 0.0:
        for u in range(n - 1):
            row = n - 1 - u
            k = int(rng.binomial(row, noise_p))
            for w in _distinct_sample(rng, row, k):
                v = u + 1 + w
                if u * n + v not in forbidden:
                    edges.append((u, v))
    return Graph(n, edges), truth


# ---------------------------------------------------------------------------
# Experiment fixtures
# ---------------------------------------------------------------------------

_KIND_INITIAL = {
    StructureKind.CLIQUE: "c",
    StructureKind.STAR: "s",
    StructureKind.BICLIQUE: "b",
    StructureKind.STARCLIQUE: "q",
}


def grid_sizes(kind: StructureKind, n: int) -> tuple:
    """Structure sizes proportional to n, so fractions match across scales."""
    if kind is StructureKind.CLIQUE:
        return (max(10, n // 100),)
    if kind is StructureKind.STAR:
        return (max(12, n // 50),)
    return (max(4, n // 250), max(8, n // 125))


@dataclass
class GridEntry:
    name: str
    graph: Graph
    composition: frozenset
    size: int
    truth: list


def composition_grid(sizes=(1000, 3000, 10000), cap: int = 8,
                     noise_scale: float = 0.5, seed: int = 0) -> list:
    """Graphs for every nonempty kind subset at every size.

    Each graph holds floor(cap / |composition|) structures of each kind in
    its composition, sized proportionally to n, over light subcritical
    noise. 15 compositions x len(sizes) graphs in total.
    """
    kinds = list(StructureKind)
    compositions = [
        frozenset(combo)
        for r in range(1, len(kinds) + 1)
        for combo in itertools.combinations(kinds, r)
    ]
    entries = []
    counter = 0
    for n in sizes:
        for comp in compositions:
            per = max(1, cap // len(comp))
            specs = []
            for kind in kinds:
                if kind in comp:
                    specs.extend(
                        PlantSpec(kind, grid_sizes(kind, n)) for _ in range(per)
                    )
            graph, truth = plant(n, noise_scale / n, specs,
                                 seed=seed * 1_000_003 + counter)
            tag = "".join(_KIND_INITIAL[k] for k in kinds if k in comp)
            entries.append(GridEntry(f"{tag}-n{n}", graph, comp, n, truth))
            counter += 1
    return entries


def scaling_graph(m: int, seed: int = 0):
    """ER+planted family for runtime scaling: edge budget pinned to m.

    Roughly 65% of the edges sit in 25-node cliques and 27% in 99-spoke
    stars over n = 2m/5 nodes, with a subcritical ER island on the last
    n/6 nodes plus a very light noise overlay (expected degree 0.02). The
    overlay stays thin so blocks do not chain into one supercluster and
    the family keeps one shape while m grows.
    """
    n = 2 * m // 5
    island = n // 6
    cliques = max(1, (65 * m) // (100 * 300))
    stars = max(1, int(0.275 * m) // 99)
    specs = [PlantSpec(StructureKind.CLIQUE, (25,)) for _ in range(cliques)]
    specs += [PlantSpec(StructureKind.STAR, (99,)) for _ in range(stars)]
    if sum(s.node_count() for s in specs) > n - island:
        raise InputError("scaling family block budget exceeded")
    overlay_p = 0.02 / (n - 1)
    planted, truth = plant(n, overlay_p, specs, seed)
    island_p = min(1.0, 0.9 / (island - 1))
    island_graph = er(island, island_p, seed + 1)
    offset = n - island
    edges = list(planted.edges())
    edges.extend((offset + u, offset + v) for u, v in island_graph.edges())
    return Graph(n, edges), truth


def drift_sequence(steps: int = 6, n: int = 600, seed: int = 0) -> list:
    """Graphs drifting from all-clique to all-star, one structure per step.

    Step t replaces the first t cliques with stars of the same node count,
    so the composition distance between steps i and j grows with |i - j|.
    """
    base = 6
    out = []
    for t in range(steps):
        specs = []
        for i in range(base):
            if i < min(t, base):
                specs.append(PlantSpec(StructureKind.STAR, (15,)))
            else:
                specs.append(PlantSpec(StructureKind.CLIQUE, (16,)))
        graph, _ = plant(n, 0.25 / n, specs, seed=seed * 7919 + t)
        out.append((f"step{t}", graph))
    return out
