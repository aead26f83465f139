"""
Edge-list topology snapshots and demand files
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from cdsma.errors import EmptyGraph, MissingNode, NegativeWeight, ParseError
from cdsma.graph.core import Graph, maximal_connected_component
from cdsma.metrics.centrality import DemandVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TopologySnapshot:
    """Maximal connected component of a measured topology."""

    name: str
    graph: Graph
    original_ids: tuple[str, ...]
    mcc_fraction: float

    def label(self, node: int) -> str:
        return self.original_ids[node]

    def to_dict(self):
        return {
            'name': self.name,
            'nodes': self.graph.node_count,
            'edges': self.graph.edge_count,
            'mcc_fraction': self.mcc_fraction,
        }


def _data_lines(path: Path):
    with path.open(encoding='utf-8') as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            yield number, line.split()


def _node_ids(labels: list[str]) -> dict[str, int]:
    """Integer labels forming exactly ``0..n-1`` keep their value as node id."""
    canonical = all(label.isdecimal() and str(int(label)) == label for label in labels)
    if canonical and sorted(int(label) for label in labels) == list(range(len(labels))):
        return {label: int(label) for label in labels}
    return {label: node for node, label in enumerate(labels)}


def load_edge_list(path, name: str | None = None) -> TopologySnapshot:
    """Parse ``<label> <label>`` lines and keep the maximal connected component.

    Labels may be any whitespace-free token. When they are exactly the
    integers ``0..n-1`` they are the node ids; otherwise ids follow first
    appearance. Duplicate edges collapse, self-loops are rejected.
    """
    path = Path(path)
    seen: dict[str, None] = {}
    pairs = []
    for number, tokens in _data_lines(path):
        if len(tokens) != 2:
            raise ParseError(path, number, f'expected two node labels, found {len(tokens)} tokens')
        left, right = tokens
        if left == right:
            raise ParseError(path, number, f'self-loop on node {left}')
        seen.setdefault(left)
        seen.setdefault(right)
        pairs.append((left, right))
    if not seen:
        raise EmptyGraph(f'{path}: no edges found')

    ids = _node_ids(list(seen))
    edges = [(ids[left], ids[right]) for left, right in pairs]
    graph, id_map = maximal_connected_component(edges, len(ids))
    labels = [None] * graph.node_count
    for label, old in ids.items():
        new = id_map.get(old)
        if new is not None:
            labels[new] = label
    snapshot = TopologySnapshot(
        name=name or path.stem,
        graph=graph,
        original_ids=tuple(labels),
        mcc_fraction=graph.node_count / len(ids),
    )
    logger.info('loaded %s: %d of %d nodes in the mCC', snapshot.name, graph.node_count, len(ids))
    return snapshot


def save_edge_list(path, g: Graph, labels: Sequence[str] | None = None, comment: str | None = None) -> None:
    path = Path(path)
    with path.open('w', encoding='utf-8') as handle:
        if comment:
            handle.write(f'# {comment}\n')
        for u, v in g.edges():
            a, b = (labels[u], labels[v]) if labels is not None else (u, v)
            handle.write(f'{a} {b}\n')


def save_demand(path, w: DemandVector, labels: Sequence[str] | None = None) -> None:
    path = Path(path)
    with path.open('w', encoding='utf-8') as handle:
        for node, weight in enumerate(w.tolist()):
            label = labels[node] if labels is not None else node
            handle.write(f'{label} {weight!r}\n')


def load_demand(path, node_count: int, labels: Sequence[str] | None = None) -> DemandVector:
    """Read ``<node-label> <weight>`` lines; every node needs exactly one entry."""
    path = Path(path)
    if labels is None:
        labels = [str(u) for u in range(node_count)]
    index = {label: node for node, label in enumerate(labels)}
    weights: list[float | None] = [None] * node_count
    for number, tokens in _data_lines(path):
        if len(tokens) != 2:
            raise ParseError(path, number, f'expected "<node> <weight>", found {len(tokens)} tokens')
        label, text = tokens
        node = index.get(label)
        if node is None:
            raise ParseError(path, number, f'unknown node {label}')
        if weights[node] is not None:
            raise ParseError(path, number, f'duplicate entry for node {label}')
        try:
            weight = float(text)
        except ValueError:
            raise ParseError(path, number, f'weight {text!r} is not a number') from None
        if not math.isfinite(weight):
            raise ParseError(path, number, f'weight {text!r} is not finite')
        if weight < 0:
            raise NegativeWeight(node, weight)
        weights[node] = weight
    for node, weight in enumerate(weights):
        if weight is None:
            raise MissingNode(node)
    return DemandVector(weights)
