"""Maximum-entropy edge distribution under a model's region constraints.

A model translates into edge-count constraints over regions of the
adjacency matrix: one global region (all node pairs, target m) plus one
region per constraint area of each structure. The max-ent distribution is
logistic in the sum of the Lagrange multipliers covering a cell, so cells
sharing the same covering-region signature share one probability. We only
ever iterate over these cell classes, never over all n^2 cells.

Multiplier sums are clamped to +-30, which keeps every probability inside
(0, 1) and all code lengths finite even for saturated constraints.
"""

from __future__ import annotations

import math

from .errors import ConvergenceError, InvariantError
from .structures import StructureKind

SUM_CLAMP = 30.0
# individual multipliers may stack against each other on overlapping
# saturated regions; only the per-cell sum is probability-clamped
LAMBDA_BOUND = 200.0
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 500

GLOBAL_REGION = 0


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _clamped_prob(s: float) -> float:
    return _sigmoid(max(-SUM_CLAMP, min(SUM_CLAMP, s)))


def binary_entropy(p: float) -> float:
    """H(p) in bits, with the 0 log 0 = 0 convention."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def empty_model_data_length(n: int, m: int) -> float:
    """Closed form for the one-global-constraint system: m* H(m/m*)."""
    m_star = n * (n - 1) // 2
    if m_star == 0:
        return 0.0
    return m_star * binary_entropy(m / m_star)


def structure_regions(s):
    """(region kind tag, pair-enumerator args, target) per constraint area.

    Cliques impose one constraint, stars two, bicliques and starcliques
    three; loop cells are excluded because only unordered pairs exist.
    """
    if s.kind is StructureKind.CLIQUE:
        return [("within", (sorted(s.nodes),), s.m_s)]
    if s.kind is StructureKind.STAR:
        spokes = sorted(s.spokes)
        return [
            ("across", ([s.hub], spokes), len(spokes)),
            ("within", (spokes,), s.x_s),
        ]
    left, right = sorted(s.left), sorted(s.right)
    return [
        ("within", (left,), s.m_l),
        ("within", (right,), s.m_r),
        ("across", (left, right), s.m_a),
    ]


def _iter_region_pairs(tag, args, n):
    """Yield encoded cell ids (u*n+v with u<v) of one region."""
    if tag == "within":
        (nodes,) = args
        for i, u in enumerate(nodes):
            base = u * n
            for v in nodes[i + 1 :]:
                yield base + v
    else:
        a, b = args
        for u in a:
            for v in b:
                yield (u * n + v) if u < v else (v * n + u)


class ConstraintSystem:
    """Cell-class partition plus per-region targets for one graph + model.

    Supports incremental extension and rollback so a greedy summarizer can
    trial a candidate's regions cheaply. Cells covered by no structure
    region form the implicit base class (global constraint only).
    """

    def __init__(self, graph):
        self.graph = graph
        self.n = graph.n
        self.m = graph.m
        self.total_cells = graph.n * (graph.n - 1) // 2
        # region id -> (target, size); id 0 is the global region
        self.targets = {GLOBAL_REGION: (graph.m, self.total_cells)}
        self._next_id = 1
        self.cell_sig: dict = {}  # encoded cell -> tuple of region ids
        self.classes: dict = {}  # signature tuple -> [cell count, edge count]
        self.covered_cells = 0
        self.covered_edges = 0
        self._trial_log = None

    # -- construction ------------------------------------------------------

    def add_region(self, tag, args, target) -> int:
        rid = self._next_id
        self._next_id += 1
        adj = self.graph.adj
        n = self.n
        size = 0
        cell_sig = self.cell_sig
        classes = self.classes
        log = self._trial_log
        for cell in _iter_region_pairs(tag, args, n):
            size += 1
            u, v = divmod(cell, n)
            is_edge = v in adj[u]
            old = cell_sig.get(cell)
            if log is not None:
                log.append((cell, old))
            if old is None:
                new = (rid,)
                self.covered_cells += 1
                if is_edge:
                    self.covered_edges += 1
            else:
                new = old + (rid,)
                entry = classes[old]
                entry[0] -= 1
                if is_edge:
                    entry[1] -= 1
                if entry[0] == 0:
                    del classes[old]
            cell_sig[cell] = new
            entry = classes.get(new)
            if entry is None:
                classes[new] = [1, 1 if is_edge else 0]
            else:
                entry[0] += 1
                if is_edge:
                    entry[1] += 1
        if target > size:
            raise InvariantError(
                f"region target {target} exceeds region size {size}"
            )
        self.targets[rid] = (target, size)
        return rid

    def add_structure(self, s) -> list:
        self.graph_check(s)
        return [
            self.add_region(tag, args, target)
            for tag, args, target in structure_regions(s)
        ]

    def graph_check(self, s) -> None:
        if any(v < 0 or v >= self.n for v in s.node_set):
            raise InvariantError("structure references a node outside the graph")

    # -- trial bookkeeping for the greedy admission loop --------------------

    def begin_trial(self) -> None:
        self._trial_log = []
        self._trial_first_id = self._next_id

    def commit_trial(self) -> None:
        self._trial_log = None

    def rollback_trial(self) -> None:
        """Undo every region added since begin_trial."""
        adj = self.graph.adj
        n = self.n
        classes = self.classes
        for cell, old in reversed(self._trial_log):
            u, v = divmod(cell, n)
            is_edge = v in adj[u]
            cur = self.cell_sig[cell]
            entry = classes[cur]
            entry[0] -= 1
            if is_edge:
                entry[1] -= 1
            if entry[0] == 0:
                del classes[cur]
            if old is None:
                del self.cell_sig[cell]
                self.covered_cells -= 1
                if is_edge:
                    self.covered_edges -= 1
            else:
                self.cell_sig[cell] = old
                entry = classes.get(old)
                if entry is None:
                    classes[old] = [1, 1 if is_edge else 0]
                else:
                    entry[0] += 1
                    if is_edge:
                        entry[1] += 1
        for rid in range(self._trial_first_id, self._next_id):
            del self.targets[rid]
        self._next_id = self._trial_first_id
        self._trial_log = None

    # -- views --------------------------------------------------------------

    def base_class(self) -> tuple:
        """(cell count, edge count) of the global-only class."""
        return (
            self.total_cells - self.covered_cells,
            self.m - self.covered_edges,
        )

    @property
    def regions(self):
        return dict(self.targets)


def build_constraints(graph, model) -> ConstraintSystem:
    """One global region plus the constraint areas of every structure."""
    cs = ConstraintSystem(graph)
    for s in model.structures:
        cs.add_structure(s)
    return cs


class MaxEntState:
    """Fitted Lagrange multipliers over a constraint system's regions."""

    def __init__(self, system: ConstraintSystem, lambdas: dict):
        self.system = system
        self.lambdas = lambdas

    def class_probabilities(self):
        """Yield (cell count, edge count, probability) over all classes."""
        lam = self.lambdas
        lam0 = lam[GLOBAL_REGION]
        for sig, (cells, edges) in self.system.classes.items():
            s = lam0
            for rid in sig:
                s += lam[rid]
            yield cells, edges, _clamped_prob(s)
        base_cells, base_edges = self.system.base_class()
        if base_cells:
            yield base_cells, base_edges, _clamped_prob(lam0)

    def residuals(self) -> dict:
        """Constraint violation per region: sum of Pr minus target."""
        lam = self.lambdas
        lam0 = lam[GLOBAL_REGION]
        res = {rid: -target for rid, (target, _) in self.system.targets.items()}
        for sig, (cells, _) in self.system.classes.items():
            s = lam0
            for rid in sig:
                s += lam[rid]
            p = cells * _clamped_prob(s)
            res[GLOBAL_REGION] += p
            for rid in sig:
                res[rid] += p
        base_cells, _ = self.system.base_class()
        res[GLOBAL_REGION] += base_cells * _clamped_prob(lam0)
        return res

    def cell_probability(self, u: int, v: int) -> float:
        """Pr(a_uv = 1) for one concrete node pair (diagnostics only)."""
        if u == v:
            raise InvariantError("loop cells carry no probability")
        if u > v:
            u, v = v, u
        sig = self.system.cell_sig.get(u * self.system.n + v, ())
        s = self.lambdas[GLOBAL_REGION]
        for rid in sig:
            s += self.lambdas[rid]
        return _clamped_prob(s)


def fit(
    system: ConstraintSystem,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    warm_start: dict | None = None,
) -> MaxEntState:
    """Coordinate ascent on the dual: one bisection per region per sweep.

    The per-region residual is monotone in its multiplier, so bisection on
    [-LAMBDA_BOUND, LAMBDA_BOUND] is exact up to tolerance. Deterministic
    given the system and parameters.
    """
    lam = {rid: 0.0 for rid in system.targets}
    if warm_start:
        for rid, value in warm_start.items():
            if rid in lam:
                lam[rid] = value

    # per-region membership over current classes
    members = {rid: [] for rid in system.targets}
    class_items = []
    for sig, (cells, _) in system.classes.items():
        idx = len(class_items)
        s = lam[GLOBAL_REGION]
        for rid in sig:
            s += lam[rid]
        class_items.append([cells, s])
        members[GLOBAL_REGION].append(idx)
        for rid in sig:
            members[rid].append(idx)
    base_cells, _ = system.base_class()

    def region_sum(rid, shift):
        total = 0.0
        for idx in members[rid]:
            cells, s = class_items[idx]
            total += cells * _clamped_prob(s + shift)
        if rid == GLOBAL_REGION:
            total += base_cells * _clamped_prob(lam[GLOBAL_REGION] + shift)
        return total

    region_ids = sorted(system.targets)
    worst = math.inf
    for _ in range(max_iter):
        for rid in region_ids:
            target = system.targets[rid][0]
            cur = lam[rid]
            lo, hi = -LAMBDA_BOUND - cur, LAMBDA_BOUND - cur
            f_lo = region_sum(rid, lo) - target
            f_hi = region_sum(rid, hi) - target
            if f_lo >= 0.0:
                shift = lo
            elif f_hi <= 0.0:
                shift = hi
            else:
                for _ in range(64):
                    mid = 0.5 * (lo + hi)
                    if region_sum(rid, mid) - target > 0.0:
                        hi = mid
                    else:
                        lo = mid
                    if hi - lo < 1e-13:
                        break
                shift = 0.5 * (lo + hi)
            if shift != 0.0:
                lam[rid] += shift
                for idx in members[rid]:
                    class_items[idx][1] += shift
        worst = max(abs(region_sum(rid, 0.0) - system.targets[rid][0])
                    for rid in region_ids)
        if worst <= tol:
            return MaxEntState(system, lam)
    raise ConvergenceError(
        f"max-ent fit did not reach tol={tol} after {max_iter} sweeps "
        f"(worst residual {worst:.3g})",
        worst_residual=worst,
    )


def data_length(graph, state: MaxEntState) -> float:
    """Bits to transmit the upper-triangle cells under the fitted state."""
    if graph is not state.system.graph:
        if graph.n != state.system.n or graph.m != state.system.m:
            raise InvariantError("state was fitted for a different graph")
    bits = 0.0
    for cells, edges, p in state.class_probabilities():
        if edges and p <= 0.0:
            raise InvariantError("edge with probability 0: infinite length")
        if edges < cells and p >= 1.0:
            raise InvariantError("non-edge with probability 1: infinite length")
        if edges:
            bits += edges * -math.log2(p)
        if edges < cells:
            bits += (cells - edges) * -math.log2(1.0 - p)
    return bits
