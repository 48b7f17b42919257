"""Structure vocabulary and models.

The vocabulary has exactly four pattern kinds: cliques, stars, bicliques,
and starcliques. A structure stores concrete node IDs plus the edge counts
inside its constraint areas; all counts refer to the real graph, so a
model's constraint targets are always jointly feasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import InvariantError

VOCABULARY_SIZE = 4


class StructureKind(str, Enum):
    CLIQUE = "clique"
    STAR = "star"
    BICLIQUE = "biclique"
    STARCLIQUE = "starclique"


def pairs_max(k: int) -> int:
    """Maximum number of edges among k nodes."""
    return k * (k - 1) // 2


@dataclass(frozen=True)
class Clique:
    nodes: frozenset
    m_s: int  # edges inside the node set

    kind = StructureKind.CLIQUE

    def __post_init__(self):
        if not self.nodes:
            raise InvariantError("clique has no nodes")
        if not 0 <= self.m_s <= pairs_max(len(self.nodes)):
            raise InvariantError(f"clique edge count {self.m_s} out of bounds")

    @property
    def n_s(self) -> int:
        return len(self.nodes)

    @property
    def total_edges(self) -> int:
        return self.m_s

    @property
    def node_set(self) -> frozenset:
        return self.nodes


@dataclass(frozen=True)
class Star:
    hub: int
    spokes: frozenset
    x_s: int  # edges among the spokes

    kind = StructureKind.STAR

    def __post_init__(self):
        if not self.spokes:
            raise InvariantError("star has no spokes")
        if self.hub in self.spokes:
            raise InvariantError("hub is listed as a spoke")
        if not 0 <= self.x_s <= pairs_max(len(self.spokes)):
            raise InvariantError(f"spoke edge count {self.x_s} out of bounds")

    @property
    def n_s(self) -> int:
        return 1 + len(self.spokes)

    @property
    def total_edges(self) -> int:
        # every spoke is adjacent to the hub by construction
        return len(self.spokes) + self.x_s

    @property
    def node_set(self) -> frozenset:
        return self.spokes | {self.hub}


@dataclass(frozen=True)
class Biclique:
    left: frozenset
    right: frozenset
    m_l: int  # edges within the left set
    m_r: int  # edges within the right set
    m_a: int  # edges across

    kind = StructureKind.BICLIQUE

    def __post_init__(self):
        if not self.left or not self.right:
            raise InvariantError("biclique side is empty")
        if self.left & self.right:
            raise InvariantError("left and right sets overlap")
        if not 0 <= self.m_l <= pairs_max(len(self.left)):
            raise InvariantError(f"left edge count {self.m_l} out of bounds")
        if not 0 <= self.m_r <= pairs_max(len(self.right)):
            raise InvariantError(f"right edge count {self.m_r} out of bounds")
        if not 0 <= self.m_a <= len(self.left) * len(self.right):
            raise InvariantError(f"cross edge count {self.m_a} out of bounds")

    @property
    def n_s(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def total_edges(self) -> int:
        return self.m_l + self.m_r + self.m_a

    @property
    def node_set(self) -> frozenset:
        return self.left | self.right


@dataclass(frozen=True)
class Starclique(Biclique):
    """Biclique whose left side is densely interconnected."""

    kind = StructureKind.STARCLIQUE


Structure = Clique | Star | Biclique | Starclique

_KIND_TO_CLASS = {
    StructureKind.CLIQUE: Clique,
    StructureKind.STAR: Star,
    StructureKind.BICLIQUE: Biclique,
    StructureKind.STARCLIQUE: Starclique,
}


def size_key(s: Structure) -> tuple:
    """(n_s, m_s) sort key used wherever structures are ranked by size."""
    return (s.n_s, s.total_edges)


def from_graph(kind: StructureKind, g, **node_sets) -> Structure:
    """Build a structure of `kind` with edge counts recounted from `g`."""
    if kind is StructureKind.CLIQUE:
        nodes = frozenset(node_sets["nodes"])
        return Clique(nodes, g.edge_count_within(nodes))
    if kind is StructureKind.STAR:
        hub = node_sets["hub"]
        spokes = frozenset(node_sets["spokes"])
        return Star(hub, spokes, g.edge_count_within(spokes))
    left = frozenset(node_sets["left"])
    right = frozenset(node_sets["right"])
    cls = _KIND_TO_CLASS[kind]
    return cls(
        left,
        right,
        g.edge_count_within(left),
        g.edge_count_within(right),
        g.edge_count_across(left, right),
    )


@dataclass
class Model:
    """Ordered structure list plus the graph totals it summarizes."""

    n: int
    m: int
    structures: list = field(default_factory=list)

    def __post_init__(self):
        for s in self.structures:
            self.validate_structure(s)

    def validate_structure(self, s: Structure) -> None:
        if any(v < 0 or v >= self.n for v in s.node_set):
            raise InvariantError("structure references a node outside the graph")

    def kind_census(self) -> dict:
        census = {k.value: 0 for k in StructureKind}
        for s in self.structures:
            census[s.kind.value] += 1
        return census


def structure_to_json(s: Structure) -> dict:
    if isinstance(s, Clique):
        return {"kind": s.kind.value, "nodes": sorted(s.nodes), "m_s": s.m_s}
    if isinstance(s, Star):
        return {
            "kind": s.kind.value,
            "hub": s.hub,
            "spokes": sorted(s.spokes),
            "x_s": s.x_s,
        }
    return {
        "kind": s.kind.value,
        "left": sorted(s.left),
        "right": sorted(s.right),
        "m_L": s.m_l,
        "m_R": s.m_r,
        "m_A": s.m_a,
    }


def structure_from_json(obj: dict) -> Structure:
    kind = StructureKind(obj["kind"])
    if kind is StructureKind.CLIQUE:
        return Clique(frozenset(obj["nodes"]), obj["m_s"])
    if kind is StructureKind.STAR:
        return Star(obj["hub"], frozenset(obj["spokes"]), obj["x_s"])
    cls = _KIND_TO_CLASS[kind]
    return cls(
        frozenset(obj["left"]),
        frozenset(obj["right"]),
        obj["m_L"],
        obj["m_R"],
        obj["m_A"],
    )


def model_to_json(model: Model, ledger=None) -> dict:
    out = {
        "n": model.n,
        "m": model.m,
        "structures": [structure_to_json(s) for s in model.structures],
    }
    if ledger is not None:
        out["ledger"] = ledger
    return out


def model_from_json(obj: dict) -> Model:
    return Model(
        obj["n"],
        obj["m"],
        [structure_from_json(s) for s in obj["structures"]],
    )
