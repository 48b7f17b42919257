"""Description-length arithmetic.

Everything here returns code lengths in bits; no bit stream is ever
materialized. The zero-guard convention applies throughout: a log (or an
iterated log) whose argument is below 1 contributes exactly 0 bits, which
keeps all lengths finite for degenerate counts.

Also defines the ID-free common model (node fractions and edge densities
at a reference size) and the transformation pair that morphs it back into
the two individual models, since their lengths are computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvariantError
from .structures import (
    Biclique,
    Clique,
    Star,
    Starclique,
    Structure,
    StructureKind,
    VOCABULARY_SIZE,
    pairs_max,
)

# Normalizer of the universal code for positive integers.
RISSANEN_C0 = 2.865064
_LOG2_C0 = math.log2(RISSANEN_C0)
_LN2 = math.log(2.0)


def universal_int(n: int) -> float:
    """Length of the universal code for a positive integer, in bits."""
    if n < 1:
        raise ValueError(f"universal_int requires n >= 1, got {n}")
    bits = _LOG2_C0
    x = float(n)
    while True:
        x = math.log2(x)
        if x <= 0.0:
            break
        bits += x
    return bits


def log_binomial(n: int, k: int) -> float:
    """log2 of C(n, k), via log-gamma so large n cannot overflow."""
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"log_binomial domain error: n={n}, k={k}")
    if k == 0 or k == n:
        return 0.0
    return (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    ) / _LN2


def glog(x) -> float:
    """log2 with the log 0 := 0 convention (any argument < 1 gives 0)."""
    return math.log2(x) if x > 1 else 0.0


def gloglog(x) -> float:
    """Iterated guarded log; the guard applies to each application."""
    return glog(glog(x))


# ---------------------------------------------------------------------------
# Per-structure lengths, from counts
# ---------------------------------------------------------------------------


def clique_length_counts(n_s, m_s, n=None, with_ids=False) -> float:
    if n_s < 1:
        raise InvariantError("clique must have at least one node")
    m_max = pairs_max(n_s)
    if not 0 <= m_s <= m_max:
        raise InvariantError(f"clique edge count {m_s} exceeds maximum {m_max}")
    bits = (
        universal_int(n_s)
        + 1.0
        + gloglog(m_max // 2)
        + glog(min(m_s, m_max - m_s))
    )
    if with_ids:
        bits += log_binomial(n, n_s)
    return bits


def star_length_counts(n_spokes, x_s, n=None, with_ids=False) -> float:
    if n_spokes < 1:
        raise InvariantError("star must have at least one spoke")
    x_max = pairs_max(n_spokes)
    if not 0 <= x_s <= x_max:
        raise InvariantError(f"spoke edge count {x_s} exceeds maximum {x_max}")
    bits = universal_int(n_spokes) + gloglog(x_max) + glog(x_s)
    if with_ids:
        bits += glog(n) + log_binomial(n - 1, n_spokes)
    return bits


def biclique_length_counts(
    n_l, n_r, m_l, m_r, m_a, n=None, with_ids=False, dense_left=False
) -> float:
    if n_l < 1 or n_r < 1:
        raise InvariantError("biclique sides must be nonempty")
    ml_max, mr_max, ma_max = pairs_max(n_l), pairs_max(n_r), n_l * n_r
    if not 0 <= m_l <= ml_max:
        raise InvariantError(f"left edge count {m_l} exceeds maximum {ml_max}")
    if not 0 <= m_r <= mr_max:
        raise InvariantError(f"right edge count {m_r} exceeds maximum {mr_max}")
    if not 0 <= m_a <= ma_max:
        raise InvariantError(f"cross edge count {m_a} exceeds maximum {ma_max}")
    n_s = n_l + n_r
    # a starclique's left side is dense, so its non-edges are transmitted
    left_count = ml_max - m_l if dense_left else m_l
    bits = (
        universal_int(n_s)
        + glog(n_s)
        + gloglog(ml_max)
        + glog(left_count)
        + gloglog(mr_max)
        + glog(m_r)
        + gloglog(ma_max)
        + glog(ma_max - m_a)
    )
    if with_ids:
        bits += log_binomial(n, n_l) + log_binomial(n - n_l, n_s - n_l)
    return bits


def clique_length(s: Clique, n: int, with_ids: bool = True) -> float:
    return clique_length_counts(s.n_s, s.m_s, n, with_ids)


def star_length(s: Star, n: int, with_ids: bool = True) -> float:
    return star_length_counts(len(s.spokes), s.x_s, n, with_ids)


def biclique_length(s: Biclique, n: int, with_ids: bool = True) -> float:
    return biclique_length_counts(
        len(s.left), len(s.right), s.m_l, s.m_r, s.m_a, n, with_ids,
        dense_left=False,
    )


def starclique_length(s: Starclique, n: int, with_ids: bool = True) -> float:
    return biclique_length_counts(
        len(s.left), len(s.right), s.m_l, s.m_r, s.m_a, n, with_ids,
        dense_left=True,
    )


def structure_length(s: Structure, n: int, with_ids: bool = True) -> float:
    if s.kind is StructureKind.CLIQUE:
        return clique_length(s, n, with_ids)
    if s.kind is StructureKind.STAR:
        return star_length(s, n, with_ids)
    if s.kind is StructureKind.STARCLIQUE:
        return starclique_length(s, n, with_ids)
    return biclique_length(s, n, with_ids)


def type_frequency_bits(structures) -> float:
    """Sum of -log2 Pr(type(s) | S) with empirical type frequencies."""
    if not structures:
        return 0.0
    counts: dict = {}
    for s in structures:
        counts[s.kind] = counts.get(s.kind, 0) + 1
    total = len(structures)
    return sum(-math.log2(counts[s.kind] / total) for s in structures)


def model_length(model, with_ids: bool = True) -> float:
    """Bits for an individual model: header, type census, structures."""
    s_count = len(model.structures)
    bits = (
        universal_int(model.n + 1)
        + universal_int(model.m + 1)
        + universal_int(s_count + 1)
        + log_binomial(s_count + VOCABULARY_SIZE - 1, VOCABULARY_SIZE - 1)
        + type_frequency_bits(model.structures)
    )
    for s in model.structures:
        bits += structure_length(s, model.n, with_ids)
    return bits


# ---------------------------------------------------------------------------
# Common model and transformations
# ---------------------------------------------------------------------------


def round_half_up(x: float) -> int:
    """Round to the closest integer, halves away from zero (x >= 0 here)."""
    return math.floor(x + 0.5)


def node_slot_counts(s: Structure) -> tuple:
    """Node quantities of a structure, in canonical slot order."""
    if s.kind is StructureKind.CLIQUE:
        return (s.n_s,)
    if s.kind is StructureKind.STAR:
        return (len(s.spokes),)
    return (len(s.left), len(s.right))


def edge_slot_counts(s: Structure) -> tuple:
    """Edge quantities of a structure, in canonical slot order."""
    if s.kind is StructureKind.CLIQUE:
        return (s.m_s,)
    if s.kind is StructureKind.STAR:
        return (s.x_s,)
    return (s.m_l, s.m_r, s.m_a)


def edge_slot_maxima(kind: StructureKind, node_counts) -> tuple:
    """Maximum edge count per edge slot, given the node slot counts."""
    if kind is StructureKind.CLIQUE:
        return (pairs_max(node_counts[0]),)
    if kind is StructureKind.STAR:
        return (pairs_max(node_counts[0]),)
    n_l, n_r = node_counts
    return (pairs_max(n_l), pairs_max(n_r), n_l * n_r)


def counts_length(kind, node_counts, edge_counts, n=None, with_ids=False):
    """Per-kind structure length from bare slot counts."""
    if kind is StructureKind.CLIQUE:
        return clique_length_counts(node_counts[0], edge_counts[0], n, with_ids)
    if kind is StructureKind.STAR:
        return star_length_counts(node_counts[0], edge_counts[0], n, with_ids)
    return biclique_length_counts(
        node_counts[0], node_counts[1], *edge_counts, n=n, with_ids=with_ids,
        dense_left=kind is StructureKind.STARCLIQUE,
    )


@dataclass(frozen=True)
class CommonStructure:
    """ID-free shared structure: averaged node fractions and edge densities."""

    kind: StructureKind
    fractions: tuple
    densities: tuple

    def reconstitute(self, n_ref: int) -> tuple:
        """Concrete (node_counts, edge_counts) at a reference graph size."""
        nodes = tuple(max(1, round_half_up(x * n_ref)) for x in self.fractions)
        maxima = edge_slot_maxima(self.kind, nodes)
        edges = tuple(
            min(mx, round_half_up(y * mx))
            for y, mx in zip(self.densities, maxima)
        )
        return nodes, edges

    @property
    def type_census_key(self):
        return self.kind


@dataclass
class CommonModel:
    """Header totals (n1 >= n2) plus the list of shared structures."""

    n1: int
    n2: int
    m1: int
    m2: int
    shared: list = field(default_factory=list)

    def __post_init__(self):
        if self.n1 < self.n2:
            raise InvariantError("common model requires n1 >= n2")


@dataclass
class TransformPair:
    """Side-1 deltas per shared structure plus both unmatched lists.

    `deltas[i]` lists signed integers per quantity slot (node slots first)
    for shared structure i; `parities[i]` holds the per-slot corrections
    that make the side-2 inversion exact when float rounding is off by
    one. Unmatched structures are kept verbatim.
    """

    n1: int
    n2: int
    deltas: list = field(default_factory=list)
    parities: list = field(default_factory=list)
    unmatched_1: list = field(default_factory=list)
    unmatched_2: list = field(default_factory=list)


def expected_side1_counts(cs: CommonStructure, n1: int) -> tuple:
    """What the common structure predicts for its side-1 counterpart."""
    return cs.reconstitute(n1)


def apply_delta_side1(cs: CommonStructure, delta, n1: int) -> tuple:
    """Side-1 (node_counts, edge_counts) after applying the stored delta."""
    exp_nodes, exp_edges = expected_side1_counts(cs, n1)
    k = len(exp_nodes)
    nodes = tuple(e + d for e, d in zip(exp_nodes, delta[:k]))
    edges = tuple(e + d for e, d in zip(exp_edges, delta[k:]))
    return nodes, edges


def infer_side2_counts(cs, delta, parity, n1, n2) -> tuple:
    """Invert the averaging to recover side-2 counts from side-1's.

    Uses the mean identity per slot; the stored parity corrections absorb
    any off-by-one from float rounding, so the inversion is exact.
    """
    nodes1, edges1 = apply_delta_side1(cs, delta, n1)
    k = len(nodes1)
    nodes2 = tuple(
        round_half_up((2.0 * x - c1 / n1) * n2) + p
        for x, c1, p in zip(cs.fractions, nodes1, parity[:k])
    )
    maxima1 = edge_slot_maxima(cs.kind, nodes1)
    maxima2 = edge_slot_maxima(cs.kind, nodes2)
    edges2 = []
    for y, c1, mx1, mx2, p in zip(
        cs.densities, edges1, maxima1, maxima2, parity[k:]
    ):
        y1 = c1 / mx1 if mx1 > 0 else 0.0
        edges2.append(round_half_up((2.0 * y - y1) * mx2) + p)
    return nodes2, tuple(edges2)


def common_model_length(cm: CommonModel) -> float:
    """Bits for a common model; shared structures are scored ID-free at n1."""
    if cm.n1 < cm.n2:
        raise InvariantError("common model requires n1 >= n2")
    s_count = len(cm.shared)
    bits = (
        universal_int(cm.n1 + 1)
        + universal_int(cm.n1 - cm.n2 + 1)
        + universal_int(cm.m1 + 1)
        + universal_int(abs(cm.m1 - cm.m2) + 1)
        + 1.0
        + universal_int(s_count + 1)
        + log_binomial(s_count + VOCABULARY_SIZE - 1, VOCABULARY_SIZE - 1)
        + type_frequency_bits(cm.shared)
    )
    for cs in cm.shared:
        nodes, edges = cs.reconstitute(cm.n1)
        bits += counts_length(cs.kind, nodes, edges)
    return bits


def transform_length(tp: TransformPair, with_ids: bool = False) -> float:
    """Bits for the transformation pair (side-2 is inferred, not sent).

    Each delta magnitude costs L_N(|d|+1); the change directions are
    charged once through a single log T term, T being the number of
    nonzero deltas. Unmatched structures are encoded like model entries,
    with node IDs only when `with_ids` is set.
    """
    bits = 0.0
    directions = 0
    for delta in tp.deltas:
        for d in delta:
            bits += universal_int(abs(d) + 1)
            if d != 0:
                directions += 1
    bits += glog(directions)
    for side, n_side in ((tp.unmatched_1, tp.n1), (tp.unmatched_2, tp.n2)):
        bits += universal_int(len(side) + 1)
        bits += log_binomial(
            len(side) + VOCABULARY_SIZE - 1, VOCABULARY_SIZE - 1
        )
        bits += type_frequency_bits(side)
        for s in side:
            bits += structure_length(s, n_side, with_ids)
    return bits
