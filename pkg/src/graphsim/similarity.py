"""Normalized Model Distance and pairwise distance matrices.

The NMD compares what the common model plus transformations cost against
the cheaper of the two individual models, normalized by the dearer one -
all encoded without node IDs. Values are clamped to [0, 1]; the boundary
identities (0 for identical models, 1 when nothing is shared between two
nonempty models) hold by definition.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import dataclass

from . import codec
from .align import describe
from .errors import GraphSimError
from .structures import model_from_json, model_to_json
from .summarize import SummarizerConfig, summarize

CACHE_ENV = "GRAPHSIM_CACHE"


@dataclass
class NmdResult:
    value: float
    l_m12: float
    l_delta: float
    l_m1: float
    l_m2: float
    clamped: bool
    raw: float

    def to_json(self) -> dict:
        return {
            "nmd": self.value,
            "L_M12": self.l_m12,
            "L_delta": self.l_delta,
            "L_M1": self.l_m1,
            "L_M2": self.l_m2,
            "clamped": self.clamped,
            "raw": self.raw,
        }


def _models_coincide(desc) -> bool:
    """True when common and both individual models agree count for count."""
    tp = desc.transform
    if tp.unmatched_1 or tp.unmatched_2:
        return False
    if desc.header["n1"] != desc.header["n2"]:
        return False
    if desc.header["m1"] != desc.header["m2"]:
        return False
    for cs, delta, parity in zip(desc.common.shared, tp.deltas, tp.parities):
        if any(delta):
            return False
        nodes1, edges1 = codec.apply_delta_side1(cs, delta, tp.n1)
        nodes2, edges2 = codec.infer_side2_counts(cs, delta, parity, tp.n1, tp.n2)
        if nodes1 != nodes2 or edges1 != edges2:
            return False
    return True


def nmd(desc, model1=None, model2=None) -> NmdResult:
    """Normalized Model Distance from a similarity description.

    Identical models give exactly 0 and two nonempty models sharing no
    structure give exactly 1; otherwise the raw ratio is clamped into
    [0, 1], and the clamp flag records a raw value above 1.
    """
    model1 = model1 if model1 is not None else desc.model1
    model2 = model2 if model2 is not None else desc.model2
    l_m1 = desc.lengths.get("L_M1_no_ids")
    l_m2 = desc.lengths.get("L_M2_no_ids")
    if l_m1 is None:
        l_m1 = codec.model_length(model1, with_ids=False)
    if l_m2 is None:
        l_m2 = codec.model_length(model2, with_ids=False)
    l_m12 = desc.lengths["L_M12"]
    l_delta = desc.lengths.get("L_delta_no_ids")
    if l_delta is None:
        l_delta = codec.transform_length(desc.transform, with_ids=False)
    denom = max(l_m1, l_m2)
    if denom <= 0.0:
        raise GraphSimError("both models have zero length; NMD undefined")
    raw = (l_m12 + l_delta - min(l_m1, l_m2)) / denom

    if _models_coincide(desc):
        value, clamped = 0.0, False
    elif (
        not desc.common.shared
        and model1.structures
        and model2.structures
    ):
        value, clamped = 1.0, False
    else:
        clamped = raw > 1.0
        value = min(1.0, max(0.0, raw))
    return NmdResult(
        value=value,
        l_m12=l_m12,
        l_delta=l_delta,
        l_m1=l_m1,
        l_m2=l_m2,
        clamped=clamped,
        raw=raw,
    )


# ---------------------------------------------------------------------------
# Collections
# ---------------------------------------------------------------------------


class GraphFacts:
    """Lightweight stand-in for a Graph once only totals are needed."""

    def __init__(self, n, m, content_hash):
        self.n = n
        self.m = m
        self._hash = content_hash

    def content_hash(self):
        return self._hash


def config_hash(cfg: SummarizerConfig) -> str:
    blob = json.dumps(cfg.__dict__, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def cache_directory(explicit=None):
    return explicit or os.environ.get(CACHE_ENV)


def summarize_cached(g, cfg: SummarizerConfig, cache_dir=None, name=None):
    """Summarize with an on-disk cache keyed by graph content and config.

    Returns (model, data_bits, total_bits_no_ids-ready payload); the cache
    stores the model plus the numbers the matrix needs, so repeated pairs
    never refit.
    """
    cache_dir = cache_directory(cache_dir)
    key = f"{g.content_hash()}-{config_hash(cfg)}"
    path = os.path.join(cache_dir, f"{key}.model.json") if cache_dir else None
    if path and os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        return model_from_json(payload["model"]), payload["data_bits"]
    model, report = summarize(g, cfg)
    if path:
        os.makedirs(cache_dir, exist_ok=True)
        payload = {"model": model_to_json(model), "data_bits": report.data_bits}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
    return model, report.data_bits


def _pair_nmd(entry1, entry2, alignment=None):
    facts1, model1, data1, name1 = entry1
    facts2, model2, data2, name2 = entry2
    desc = describe(
        facts1, facts2, alignment, model1, model2,
        data_bits=(data1, data2), names=(name1, name2),
    )
    return desc, nmd(desc)


def pairwise_matrix(
    collection,
    alignments=None,
    cfg: SummarizerConfig | None = None,
    cache_dir=None,
    jobs: int = 1,
):
    """Symmetric NMD matrix over named graphs; diagonal is 0 by definition.

    `collection` is a list of (name, Graph); `alignments` optionally maps
    frozenset({name_a, name_b}) to a NodeAlignment oriented a -> b with
    names in sorted order. Each unordered pair is computed once.
    """
    if len(collection) < 2:
        raise GraphSimError("pairwise matrix needs at least 2 graphs")
    cfg = cfg or SummarizerConfig()
    entries = []
    for name, g in collection:
        model, data_bits = summarize_cached(g, cfg, cache_dir, name)
        entries.append(
            (GraphFacts(g.n, g.m, g.content_hash()), model, data_bits, name)
        )
    names = [name for name, _ in collection]
    pairs = [
        (i, j) for i in range(len(entries)) for j in range(i + 1, len(entries))
    ]

    def alignment_for(i, j):
        if not alignments:
            return None
        a, b = names[i], names[j]
        key = frozenset((a, b))
        pair_alignment = alignments.get(key)
        if pair_alignment is None:
            return None
        if sorted((a, b))[0] == a:
            return pair_alignment
        return pair_alignment.inverted()

    results = {}
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                (i, j): pool.submit(
                    _pair_nmd, entries[i], entries[j], alignment_for(i, j)
                )
                for i, j in pairs
            }
            for (i, j), fut in futures.items():
                results[(i, j)] = fut.result()
    else:
        for i, j in pairs:
            results[(i, j)] = _pair_nmd(entries[i], entries[j],
                                        alignment_for(i, j))
    return MatrixResult(names, results)


class MatrixResult:
    """NMD values and descriptions for every unordered pair."""

    def __init__(self, names, results):
        self.names = names
        self.results = results  # (i, j) with i < j -> (desc, NmdResult)

    def value(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        key = (i, j) if i < j else (j, i)
        return self.results[key][1].value

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["id"] + self.names)
        for i, name in enumerate(self.names):
            writer.writerow(
                [name] + [f"{self.value(i, j):.6f}" for j in range(len(self.names))]
            )
        return buf.getvalue()

    def to_json(self) -> dict:
        values = [
            [self.value(i, j) for j in range(len(self.names))]
            for i in range(len(self.names))
        ]
        components = {}
        for (i, j), (desc, result) in sorted(self.results.items()):
            key = f"{self.names[i]}|{self.names[j]}"
            components[key] = {
                "nmd": result.to_json(),
                "shared_count": len(desc.matching),
                "unmatched_1": len(desc.transform.unmatched_1),
                "unmatched_2": len(desc.transform.unmatched_2),
            }
        return {"names": self.names, "values": values, "components": components}
