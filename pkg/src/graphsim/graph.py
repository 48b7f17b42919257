"""Simple undirected graphs, edge-list I/O, node alignments, set helpers.

Internal node IDs are dense 0-based integers; external labels appear only
at the I/O boundary. A Graph is treated as immutable after construction,
so it can be shared freely across threads and cached by content hash.
"""

from __future__ import annotations

import hashlib

from .errors import InputError, ParseError

COMMENT_PREFIXES = ("#", "%")


class Graph:
    """Undirected simple graph: no self-loops, no parallel edges.

    Attributes:
        n: number of nodes (indices 0..n-1)
        m: number of edges
        adj: list of neighbor sets, adj[v] = {u : {u,v} is an edge}
        labels: external label per internal index
    """

    __slots__ = ("n", "m", "adj", "labels", "_label_to_index", "_hash")

    def __init__(self, n: int, edges, labels=None):
        if n <= 0:
            raise InputError("graph must have at least one node")
        self.n = n
        self.adj = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if v not in self.adj[u]:
                self.adj[u].add(v)
                self.adj[v].add(u)
                m += 1
        self.m = m
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n or len(set(labels)) != n:
            raise InputError("labels must be a bijection onto 0..n-1")
        self.labels = list(labels)
        self._label_to_index = {lab: i for i, lab in enumerate(self.labels)}
        self._hash = None

    def neighbors(self, v: int) -> set:
        if not 0 <= v < self.n:
            raise InputError(f"node index {v} out of range")
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self):
        """Yield each edge once as an ordered pair (u < v)."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def index_of(self, label: str) -> int:
        try:
            return self._label_to_index[label]
        except KeyError:
            raise InputError(f"unknown node label {label!r}") from None

    def edge_count_within(self, nodes) -> int:
        """Number of edges with both endpoints in `nodes`."""
        s = set(nodes)
        return sum(1 for v in s for u in self.adj[v] if u in s) // 2

    def edge_count_across(self, a, b) -> int:
        """Number of edges with one endpoint in `a` and the other in `b`."""
        sa, sb = set(a), set(b)
        if len(sa) > len(sb):
            sa, sb = sb, sa
        return sum(1 for v in sa for u in self.adj[v] if u in sb)

    def content_hash(self) -> str:
        """Stable hash of (n, canonical edge set); label-independent."""
        if self._hash is None:
            h = hashlib.sha256()
            h.update(f"{self.n}:{self.m};".encode())
            for u, v in sorted(self.edges()):
                h.update(f"{u},{v};".encode())
            self._hash = h.hexdigest()
        return self._hash


class NodeAlignment:
    """Partial injective map from indices of one graph to indices of another."""

    __slots__ = ("pairs",)

    def __init__(self, pairs=None):
        self.pairs = dict(pairs or {})
        if len(set(self.pairs.values())) != len(self.pairs):
            raise InputError("alignment is not injective")

    def __len__(self):
        return len(self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def image(self, nodes) -> set:
        """Mapped image of a node set; unmapped nodes are dropped."""
        return {self.pairs[v] for v in nodes if v in self.pairs}

    def inverted(self) -> "NodeAlignment":
        return NodeAlignment({v: u for u, v in self.pairs.items()})


def jaccard(a, b) -> float:
    """|a & b| / |a | b|; two empty sets give 0 rather than a 0/0."""
    if not a and not b:
        return 0.0
    sa, sb = set(a), set(b)
    return len(sa & sb) / len(sa | sb)


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            yield lineno, line


def load_edge_list(path, directed_collapse: bool = False) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    Labels are preserved verbatim; duplicate edges and self-loops are
    dropped (the graph is simple). `directed_collapse` marks that the
    input lists directed arcs; both orientations collapse into one
    undirected edge either way, the flag just records intent.
    """
    labels: list = []
    label_to_index: dict = {}
    edges = []

    def idx(label):
        i = label_to_index.get(label)
        if i is None:
            i = len(labels)
            label_to_index[label] = i
            labels.append(label)
        return i

    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 2 tokens, got {len(parts)}", line=lineno)
        edges.append((idx(parts[0]), idx(parts[1])))
    if not labels:
        raise InputError(f"{path}: empty graph")
    return Graph(len(labels), edges, labels)


def save_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in sorted(g.edges()):
            fh.write(f"{g.labels[u]} {g.labels[v]}\n")


def load_alignment(path, g1: Graph, g2: Graph) -> NodeAlignment:
    """Parse "label1 label2" lines into a partial injective alignment."""
    pairs = {}
    seen_targets = set()
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 2 tokens, got {len(parts)}", line=lineno)
        try:
            u = g1.index_of(parts[0])
            v = g2.index_of(parts[1])
        except InputError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if u in pairs:
            raise ParseError(f"duplicate source label {parts[0]!r}", line=lineno)
        if v in seen_targets:
            raise ParseError(f"duplicate target label {parts[1]!r}", line=lineno)
        pairs[u] = v
        seen_targets.add(v)
    return NodeAlignment(pairs)
