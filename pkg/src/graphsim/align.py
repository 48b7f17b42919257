"""Model alignment: structure matching, common models, transformations.

Matches structures of equal kind across two models, averages node
fractions and edge densities into ID-free shared structures, and derives
the side-1 deltas (side-2 counts are recoverable through the mean
identity). Tie-breaks are lexicographic, so alignment is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import codec, maxent
from .codec import CommonModel, CommonStructure, TransformPair
from .errors import InvariantError
from .graph import NodeAlignment, jaccard
from .structures import (
    Model,
    Structure,
    StructureKind,
    size_key,
    structure_to_json,
)


def slot_node_sets(s: Structure) -> tuple:
    """Node-set slots used by the aligned Jaccard similarity."""
    if s.kind is StructureKind.CLIQUE:
        return (s.node_set,)
    if s.kind is StructureKind.STAR:
        return (frozenset({s.hub}), s.spokes)
    return (s.left, s.right)


def aligned_jaccard(s1: Structure, s2: Structure, alignment: NodeAlignment):
    """Average per-slot Jaccard of the mapped node sets under the alignment.

    Cliques have one slot, so this reduces to the plain Jaccard of the
    mapped node set; stars compare hubs and spokes separately, bicliques
    and starcliques left and right sides.
    """
    slots1, slots2 = slot_node_sets(s1), slot_node_sets(s2)
    vals = [jaccard(alignment.image(a), b) for a, b in zip(slots1, slots2)]
    return sum(vals) / len(vals)


def _overlap_edges(structures) -> dict:
    """Positive node-overlap Jaccard per unordered structure-index pair."""
    sets = [s.node_set for s in structures]
    edges = {}
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            w = jaccard(sets[i], sets[j])
            if w > 0.0:
                edges[(i, j)] = w
    return edges


def _greedy_size_order(structures, skip) -> list:
    return sorted(
        (i for i in range(len(structures)) if i not in skip),
        key=lambda i: (-size_key(structures[i])[0],
                       -size_key(structures[i])[1], i),
    )


def maximal_greedy(
    s1: list,
    s2: list,
    alignment: NodeAlignment | None = None,
    no_overlap: bool = False,
) -> list:
    """Type-constrained maximal matching between two structure lists.

    Without an alignment, pairs are first matched by the heaviest edges of
    the product of the two node-overlap graphs, then the leftovers are
    paired greedily by size. With a (partial) alignment, pairs are matched
    by descending aligned Jaccard until no same-type pair remains. The
    `no_overlap` flag skips the product-graph phase.
    """
    if alignment:
        return _match_aligned(s1, s2, alignment)
    pairs: list = []
    matched1: set = set()
    matched2: set = set()
    if not no_overlap:
        _match_product(s1, s2, pairs, matched1, matched2)
    for i in _greedy_size_order(s1, matched1):
        for j in _greedy_size_order(s2, matched2):
            if s1[i].kind is s2[j].kind:
                pairs.append((i, j))
                matched1.add(i)
                matched2.add(j)
                break
    return pairs


def _match_product(s1, s2, pairs, matched1, matched2):
    f1 = _overlap_edges(s1)
    f2 = _overlap_edges(s2)
    if not f1 or not f2:
        return
    product_edges = {}

    def try_edge(u, v, w):
        if u[0] == v[0] or u[1] == v[1]:
            return
        key = (u, v) if u <= v else (v, u)
        if key not in product_edges:
            product_edges[key] = w

    for (a, b), w1 in f1.items():
        for (c, d), w2 in f2.items():
            w = w1 * w2
            if s1[a].kind is s2[c].kind and s1[b].kind is s2[d].kind:
                try_edge((a, c), (b, d), w)
            if s1[a].kind is s2[d].kind and s1[b].kind is s2[c].kind:
                try_edge((a, d), (b, c), w)

    pair_set = set()
    for (u, v), w in sorted(
        product_edges.items(), key=lambda kv: (-kv[1], kv[0])
    ):
        u_ok = u in pair_set or (u[0] not in matched1 and u[1] not in matched2)
        v_ok = v in pair_set or (v[0] not in matched1 and v[1] not in matched2)
        if not (u_ok and v_ok):
            continue
        for p in (u, v):
            if p not in pair_set:
                pair_set.add(p)
                pairs.append(p)
                matched1.add(p[0])
                matched2.add(p[1])


def _match_aligned(s1, s2, alignment):
    pairs = []
    rem1 = set(range(len(s1)))
    rem2 = set(range(len(s2)))
    while True:
        best = None
        best_key = None
        for i in sorted(rem1):
            for j in sorted(rem2):
                if s1[i].kind is not s2[j].kind:
                    continue
                aj = aligned_jaccard(s1[i], s2[j], alignment)
                key = (
                    -aj,
                    -(s1[i].n_s + s2[j].n_s),
                    -(s1[i].total_edges + s2[j].total_edges),
                    i,
                    j,
                )
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
        if best is None:
            return pairs
        pairs.append(best)
        rem1.discard(best[0])
        rem2.discard(best[1])


def validate_matching(matching, s1, s2) -> None:
    """Raise unless the matching is injective, type-respecting, maximal."""
    seen1, seen2 = set(), set()
    for i, j in matching:
        if i in seen1 or j in seen2:
            raise InvariantError("structure matched twice")
        if s1[i].kind is not s2[j].kind:
            raise InvariantError("matched structures differ in kind")
        seen1.add(i)
        seen2.add(j)
    kinds1 = {s1[i].kind for i in range(len(s1)) if i not in seen1}
    kinds2 = {s2[j].kind for j in range(len(s2)) if j not in seen2}
    if kinds1 & kinds2:
        raise InvariantError("matching is not maximal")


# ---------------------------------------------------------------------------
# Common model and transformations
# ---------------------------------------------------------------------------


def _safe_ratio(count, maximum) -> float:
    return count / maximum if maximum > 0 else 0.0


def build_common(s1, s2, matching, n1, n2, m1, m2):
    """Average matched pairs into a common model; derive exact transforms.

    Node fractions and edge densities of each shared structure are the
    arithmetic means of the two counterparts' normalized values. Side-1
    deltas are taken against the counts reconstituted at reference n1;
    side-2 counts are recovered by inverting the mean, with per-slot
    parity corrections stored whenever float rounding is off by one.
    """
    if n1 < n2:
        raise InvariantError("build_common requires n1 >= n2")
    cm = CommonModel(n1, n2, m1, m2)
    tp = TransformPair(n1, n2)
    for i, j in matching:
        a, b = s1[i], s2[j]
        if a.kind is not b.kind:
            raise InvariantError("matched structures differ in kind")
        nodes_a = codec.node_slot_counts(a)
        nodes_b = codec.node_slot_counts(b)
        edges_a = codec.edge_slot_counts(a)
        edges_b = codec.edge_slot_counts(b)
        maxima_a = codec.edge_slot_maxima(a.kind, nodes_a)
        maxima_b = codec.edge_slot_maxima(b.kind, nodes_b)
        fractions = tuple(
            0.5 * (ca / n1 + cb / n2) for ca, cb in zip(nodes_a, nodes_b)
        )
        densities = tuple(
            0.5 * (_safe_ratio(ea, mxa) + _safe_ratio(eb, mxb))
            for ea, mxa, eb, mxb in zip(edges_a, maxima_a, edges_b, maxima_b)
        )
        cs = CommonStructure(a.kind, fractions, densities)
        exp_nodes, exp_edges = codec.expected_side1_counts(cs, n1)
        delta = tuple(ca - e for ca, e in zip(nodes_a, exp_nodes)) + tuple(
            ea - e for ea, e in zip(edges_a, exp_edges)
        )
        zero = (0,) * len(delta)
        inf_nodes, _ = codec.infer_side2_counts(cs, delta, zero, n1, n2)
        node_par = tuple(cb - c for cb, c in zip(nodes_b, inf_nodes))
        partial = node_par + (0,) * len(edges_a)
        _, inf_edges = codec.infer_side2_counts(cs, delta, partial, n1, n2)
        edge_par = tuple(eb - e for eb, e in zip(edges_b, inf_edges))
        cm.shared.append(cs)
        tp.deltas.append(delta)
        tp.parities.append(node_par + edge_par)
    matched1 = {i for i, _ in matching}
    matched2 = {j for _, j in matching}
    tp.unmatched_1 = [s1[i] for i in range(len(s1)) if i not in matched1]
    tp.unmatched_2 = [s2[j] for j in range(len(s2)) if j not in matched2]
    verify_roundtrip(cm, tp, [s1[i] for i, _ in matching],
                     [s2[j] for _, j in matching])
    return cm, tp


def verify_roundtrip(cm: CommonModel, tp: TransformPair, side1, side2):
    """Check that the transforms reproduce both sides' counts exactly."""
    for cs, delta, parity, a, b in zip(
        cm.shared, tp.deltas, tp.parities, side1, side2
    ):
        nodes1, edges1 = codec.apply_delta_side1(cs, delta, cm.n1)
        if nodes1 != codec.node_slot_counts(a) or edges1 != codec.edge_slot_counts(a):
            raise InvariantError("side-1 reconstruction mismatch")
        nodes2, edges2 = codec.infer_side2_counts(cs, delta, parity, cm.n1, cm.n2)
        if nodes2 != codec.node_slot_counts(b) or edges2 != codec.edge_slot_counts(b):
            raise InvariantError("side-2 reconstruction mismatch")


# ---------------------------------------------------------------------------
# Similarity description
# ---------------------------------------------------------------------------


@dataclass
class SimilarityDescription:
    """Everything the comparison of two graphs produced, JSON-exportable."""

    header: dict
    common: CommonModel
    transform: TransformPair
    matching: list
    shared_meta: list
    model1: Model
    model2: Model
    lengths: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        shared = []
        for cs, delta, parity, meta in zip(
            self.common.shared,
            self.transform.deltas,
            self.transform.parities,
            self.shared_meta,
        ):
            entry = {
                "kind": cs.kind.value,
                "fractions": list(cs.fractions),
                "densities": list(cs.densities),
                "deltas": list(delta),
                "parities": list(parity),
            }
            entry.update(meta)
            shared.append(entry)
        return {
            "header": self.header,
            "shared": shared,
            "unmatched_1": [structure_to_json(s) for s in self.transform.unmatched_1],
            "unmatched_2": [structure_to_json(s) for s in self.transform.unmatched_2],
            "lengths": self.lengths,
        }


def canonical_order(g1, g2) -> bool:
    """True when the inputs must swap so that side 1 is the larger graph.

    Ties on n break on m, then on content hash, which makes comparisons
    literally symmetric in the input order.
    """
    key1 = (g1.n, g1.m, g1.content_hash())
    key2 = (g2.n, g2.m, g2.content_hash())
    return key1 < key2


def describe(
    g1,
    g2,
    alignment: NodeAlignment | None,
    model1: Model,
    model2: Model,
    data_bits: tuple | None = None,
    no_overlap: bool = False,
    names: tuple = ("graph1", "graph2"),
):
    """Full similarity description of two summarized graphs.

    Swaps the inputs into canonical order, matches the structure lists,
    builds the common model and transformations, and assembles all length
    components. `data_bits`, when given, supplies precomputed
    L(G_i | M_i) values (in input order) and skips the max-ent fits.
    """
    swapped = canonical_order(g1, g2)
    if swapped:
        g1, g2 = g2, g1
        model1, model2 = model2, model1
        names = (names[1], names[0])
        alignment = alignment.inverted() if alignment else alignment
        data_bits = (data_bits[1], data_bits[0]) if data_bits else None

    s1, s2 = model1.structures, model2.structures
    matching = maximal_greedy(s1, s2, alignment, no_overlap=no_overlap)
    cm, tp = build_common(s1, s2, matching, g1.n, g2.n, g1.m, g2.m)

    shared_meta = []
    for (i, j), cs in zip(matching, cm.shared):
        nodes_common, _ = cs.reconstitute(g1.n)
        hub = 1 if cs.kind is StructureKind.STAR else 0
        meta = {
            "side1_index": i,
            "side2_index": j,
            "jaccard": jaccard(s1[i].node_set, s2[j].node_set),
            "n_s_1": s1[i].n_s,
            "n_s_2": s2[j].n_s,
            "n_s_common": sum(nodes_common) + hub,
        }
        if alignment:
            meta["aligned_jaccard"] = aligned_jaccard(s1[i], s2[j], alignment)
        shared_meta.append(meta)

    if data_bits is None:
        data_bits = (
            maxent.data_length(g1, maxent.fit(maxent.build_constraints(g1, model1))),
            maxent.data_length(g2, maxent.fit(maxent.build_constraints(g2, model2))),
        )
    l_m12 = codec.common_model_length(cm)
    l_delta_ids = codec.transform_length(tp, with_ids=True)
    lengths = {
        "L_M12": l_m12,
        "L_delta": l_delta_ids,
        "L_data": data_bits[0] + data_bits[1],
        "objective": l_m12 + l_delta_ids + data_bits[0] + data_bits[1],
        "L_delta_no_ids": codec.transform_length(tp, with_ids=False),
        "L_M1_no_ids": codec.model_length(model1, with_ids=False),
        "L_M2_no_ids": codec.model_length(model2, with_ids=False),
    }
    header = {
        "graph1": names[0],
        "graph2": names[1],
        "n1": g1.n,
        "n2": g2.n,
        "m1": g1.m,
        "m2": g2.m,
        "swapped": swapped,
        "aligned": bool(alignment),
        "shared_count": len(matching),
    }
    return SimilarityDescription(
        header=header,
        common=cm,
        transform=tp,
        matching=matching,
        shared_meta=shared_meta,
        model1=model1,
        model2=model2,
        lengths=lengths,
    )


# ---------------------------------------------------------------------------
# Node overlap trees
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _spanning_forest(count, weighted_edges):
    """Maximum spanning forest via descending-weight Kruskal."""
    uf = _UnionFind(count)
    kept = []
    for (i, j), w in sorted(weighted_edges.items(), key=lambda kv: (-kv[1], kv[0])):
        if uf.union(i, j):
            kept.append((i, j, w))
    return kept, uf


def _tree_dict(count, node_meta, weighted_edges):
    kept, uf = _spanning_forest(count, weighted_edges)
    degree = {i: 0 for i in range(count)}
    for (i, j), _ in weighted_edges.items():
        degree[i] += 1
        degree[j] += 1
    anchors = {}
    for i in range(count):
        root = uf.find(i)
        best = anchors.get(root)
        if best is None or (-degree[i], i) < (-degree[best], best):
            anchors[root] = i
    return {
        "nodes": node_meta,
        "edges": [{"u": i, "v": j, "w": w} for i, j, w in kept],
        "root_links": sorted(anchors.values()),
    }


def overlap_tree(structures) -> dict:
    """Maximum spanning forest of the node-overlap graph plus a root.

    Every component's highest-degree vertex (degree in the overlap graph)
    hangs off a synthetic root so the result is connected.
    """
    meta = [
        {"id": i, "kind": s.kind.value, "n_s": s.n_s, "m_s": s.total_edges}
        for i, s in enumerate(structures)
    ]
    return _tree_dict(len(structures), meta, _overlap_edges(structures))


def common_overlap_tree(matching, s1, s2) -> dict:
    """Overlap tree over matched pairs, with product edge weights."""
    if not matching:
        raise InvariantError("common overlap tree needs a nonempty matching")
    meta = []
    for k, (i, j) in enumerate(matching):
        meta.append({
            "id": k,
            "kind": s1[i].kind.value,
            "n_s": round((s1[i].n_s + s2[j].n_s) / 2),
            "m_s": round((s1[i].total_edges + s2[j].total_edges) / 2),
            "pair": [i, j],
        })
    edges = {}
    for a in range(len(matching)):
        for b in range(a + 1, len(matching)):
            i1, j1 = matching[a]
            i2, j2 = matching[b]
            w = jaccard(s1[i1].node_set, s1[i2].node_set) * jaccard(
                s2[j1].node_set, s2[j2].node_set
            )
            if w > 0.0:
                edges[(a, b)] = w
    return _tree_dict(len(matching), meta, edges)


def tree_to_dot(tree: dict, name: str = "overlap_tree") -> str:
    """Render a tree dict as Graphviz DOT with weight-scaled edges."""
    lines = [f"graph {name} {{", '  root [shape=point, label=""];']
    for node in tree["nodes"]:
        nid = node["id"]
        label = f'{node["kind"]} n={node["n_s"]}'
        lines.append(
            f'  s{nid} [label="{label}", kind="{node["kind"]}", '
            f'n_s={node["n_s"]}, m_s={node["m_s"]}];'
        )
    for nid in tree["root_links"]:
        lines.append(f"  root -- s{nid};")
    for edge in tree["edges"]:
        width = 0.5 + 4.0 * edge["w"]
        lines.append(
            f'  s{edge["u"]} -- s{edge["v"]} '
            f'[weight={edge["w"]:.4f}, penwidth={width:.2f}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
