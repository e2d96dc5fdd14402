"""Title co-word semantic networks.

Nodes are content words; an edge links two words that appear together in at
least one title, weighted by the number of such titles.  Communities come
from greedy modularity optimization (local moves + aggregation, seeded node
order); mediation is measured with unweighted shortest-path betweenness.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from xml.etree import ElementTree as ET

import numpy as np

from .errors import ConsistencyError, DomainError
from .textproc import DEFAULT_TOKEN_POLICY, TokenPolicy, tokenize

__all__ = [
    "GraphPolicy",
    "CoWordGraph",
    "CommunityPartition",
    "CentralityScores",
    "ClusterInfo",
    "ClusterSummary",
    "build_coword_graph",
    "modularity",
    "louvain_communities",
    "betweenness",
    "cluster_summary",
    "export_graph",
    "load_stopwords",
    "default_stopwords",
]

_STOPWORDS_PATH = Path(__file__).parent / "data" / "stopwords_en.txt"
_DEFAULT_STOPWORDS: frozenset[str] | None = None


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Load a stopword list: one lowercase token per line, ``#`` comments
    and blank lines ignored."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def default_stopwords() -> frozenset[str]:
    """The bundled English stopword list."""
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        _DEFAULT_STOPWORDS = load_stopwords(_STOPWORDS_PATH)
    return _DEFAULT_STOPWORDS


@dataclass(frozen=True)
class GraphPolicy:
    """Co-word graph construction policy.

    min_title_frequency: nodes appearing in fewer titles are pruned
    (set to 1 to disable pruning).
    unweighted_paths: betweenness treats every edge as unit length
    (the default); kept as an explicit flag for provenance.
    """

    min_title_frequency: int = 2
    token_policy: TokenPolicy = DEFAULT_TOKEN_POLICY
    stopwords: frozenset[str] | None = None
    unweighted_paths: bool = True

    def effective_stopwords(self) -> frozenset[str]:
        return self.stopwords if self.stopwords is not None else default_stopwords()


@dataclass
class CoWordGraph:
    """Undirected weighted co-word graph.

    node_frequency: token -> number of titles containing it.
    edges: sorted (token, token) pair -> number of titles where both occur.
    """

    node_frequency: dict[str, int]
    edges: dict[tuple[str, str], int]

    @property
    def nodes(self) -> set[str]:
        return set(self.node_frequency)

    def node_count(self) -> int:
        return len(self.node_frequency)

    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {node: {} for node in self.node_frequency}
        for (u, v), w in self.edges.items():
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def degrees(self) -> dict[str, int]:
        degree = {node: 0 for node in self.node_frequency}
        for u, v in self.edges:
            degree[u] += 1
            degree[v] += 1
        return degree


@dataclass(frozen=True)
class CommunityPartition:
    """A node -> community assignment with its weighted modularity."""

    assignment: dict[str, int]
    modularity_q: float

    def community_count(self) -> int:
        return len(set(self.assignment.values()))


@dataclass(frozen=True)
class CentralityScores:
    betweenness: dict[str, float]
    degree: dict[str, int]


def build_coword_graph(
    titles, policy: GraphPolicy = GraphPolicy()
) -> CoWordGraph:
    """Build the co-word graph of a title list.

    Per title: tokenize, drop stopwords and tokens without letters,
    de-duplicate within the title, then link every remaining unordered
    token pair.  Node and edge counts accumulate across titles; nodes seen
    in fewer than ``policy.min_title_frequency`` titles are pruned together
    with their edges.  The result is invariant under permutation of the
    input titles.
    """
    titles = list(titles)
    if not titles:
        raise DomainError("cannot build a co-word graph from zero titles")
    stopwords = policy.effective_stopwords()

    node_frequency: dict[str, int] = defaultdict(int)
    edges: dict[tuple[str, str], int] = defaultdict(int)
    for title in titles:
        tokens = {
            t
            for t in tokenize(title, policy.token_policy)
            if t not in stopwords and any(c.isalpha() for c in t)
        }
        for token in tokens:
            node_frequency[token] += 1
        for u, v in combinations(sorted(tokens), 2):
            edges[(u, v)] += 1

    keep = {t for t, f in node_frequency.items() if f >= policy.min_title_frequency}
    return CoWordGraph(
        node_frequency={t: node_frequency[t] for t in sorted(keep)},
        edges={
            pair: w
            for pair, w in sorted(edges.items())
            if pair[0] in keep and pair[1] in keep
        },
    )


# ---------------------------------------------------------------------------
# Modularity and community detection
# ---------------------------------------------------------------------------


def modularity(
    graph: CoWordGraph, assignment: dict[str, int], resolution: float = 1.0
) -> float:
    """Weighted modularity of a partition:
    Q = sum_c [ w_intra(c)/m - resolution * (strength(c)/(2m))^2 ].

    An edgeless graph has Q = 0 by convention.
    """
    missing = graph.nodes - set(assignment)
    if missing:
        raise ConsistencyError(f"assignment misses nodes: {sorted(missing)[:5]}")
    m = float(sum(graph.edges.values()))
    if m == 0:
        return 0.0
    intra: dict[int, float] = defaultdict(float)
    strength: dict[int, float] = defaultdict(float)
    for (u, v), w in graph.edges.items():
        strength[assignment[u]] += w
        strength[assignment[v]] += w
        if assignment[u] == assignment[v]:
            intra[assignment[u]] += w
    q = 0.0
    for community in strength:
        q += intra.get(community, 0.0) / m - resolution * (strength[community] / (2.0 * m)) ** 2
    return q


def louvain_communities(
    graph: CoWordGraph, resolution: float = 1.0, seed: int = 0
) -> CommunityPartition:
    """Greedy modularity community detection (local-move + aggregation).

    Nodes are visited in an order shuffled by ``seed``; each node greedily
    joins the neighboring community with the largest modularity gain (ties
    broken toward the smallest community index), and converged levels are
    aggregated into super-node graphs until no merge improves modularity.
    Deterministic for a fixed (graph, seed).  The reported modularity is
    recomputed on the original graph at resolution 1.

    Community ids in the result are canonical: numbered by decreasing
    community size, ties by lexicographically smallest member.
    """
    names = sorted(graph.node_frequency)
    if not names:
        raise DomainError("community detection requires at least one node")
    index = {name: i for i, name in enumerate(names)}
    n = len(names)

    adj: list[dict[int, float]] = [dict() for _ in range(n)]
    for (u, v), w in graph.edges.items():
        adj[index[u]][index[v]] = float(w)
        adj[index[v]][index[u]] = float(w)
    self_w = [0.0] * n

    rng = np.random.Generator(np.random.PCG64(seed))
    # original node -> node id in the current (aggregated) level
    node_of = list(range(n))

    while True:
        level_n = len(adj)
        comm = _local_moves(adj, self_w, resolution, rng)
        n_comms = max(comm) + 1
        node_of = [comm[node] for node in node_of]
        if n_comms == level_n:
            break
        adj, self_w = _aggregate(adj, self_w, comm, n_comms)

    assignment_raw = {names[i]: node_of[i] for i in range(n)}
    assignment = _canonical_ids(assignment_raw)
    return CommunityPartition(
        assignment=assignment, modularity_q=modularity(graph, assignment)
    )


def _local_moves(
    adj: list[dict[int, float]],
    self_w: list[float],
    resolution: float,
    rng: np.random.Generator,
) -> list[int]:
    """One level of greedy local moves; returns a dense community labeling."""
    n = len(adj)
    strength = [sum(adj[u].values()) + 2.0 * self_w[u] for u in range(n)]
    m2 = sum(strength)
    comm = list(range(n))
    if m2 == 0.0:
        return comm
    comm_tot = strength.copy()
    order = [int(i) for i in rng.permutation(n)]

    while True:
        moved = 0
        for u in order:
            current = comm[u]
            weight_to: dict[int, float] = defaultdict(float)
            for v, w in adj[u].items():
                weight_to[comm[v]] += w
            comm_tot[current] -= strength[u]

            best_comm = current
            best_gain = weight_to.get(current, 0.0) - resolution * comm_tot[
                current
            ] * strength[u] / m2
            for candidate in sorted(weight_to):
                gain = weight_to[candidate] - resolution * comm_tot[
                    candidate
                ] * strength[u] / m2
                if gain > best_gain or (gain == best_gain and candidate < best_comm):
                    best_gain = gain
                    best_comm = candidate

            comm_tot[best_comm] += strength[u]
            if best_comm != current:
                comm[u] = best_comm
                moved += 1
        if moved == 0:
            break

    # dense relabel in order of first appearance for stable aggregation
    relabel: dict[int, int] = {}
    for u in range(n):
        if comm[u] not in relabel:
            relabel[comm[u]] = len(relabel)
    return [relabel[c] for c in comm]


def _aggregate(
    adj: list[dict[int, float]],
    self_w: list[float],
    comm: list[int],
    n_comms: int,
) -> tuple[list[dict[int, float]], list[float]]:
    """Collapse communities into super-nodes; intra-community weight becomes
    the super-node self-weight."""
    new_adj: list[dict[int, float]] = [defaultdict(float) for _ in range(n_comms)]
    new_self = [0.0] * n_comms
    for u in range(len(adj)):
        cu = comm[u]
        new_self[cu] += self_w[u]
        for v, w in adj[u].items():
            cv = comm[v]
            if cv == cu:
                new_self[cu] += w / 2.0  # seen from both endpoints
            else:
                new_adj[cu][cv] += w
    return [dict(d) for d in new_adj], new_self


def _canonical_ids(assignment: dict[str, int]) -> dict[str, int]:
    members: dict[int, list[str]] = defaultdict(list)
    for node, community in assignment.items():
        members[community].append(node)
    ordered = sorted(members.values(), key=lambda ms: (-len(ms), min(ms)))
    return {
        node: new_id for new_id, ms in enumerate(ordered) for node in ms
    }


# ---------------------------------------------------------------------------
# Betweenness centrality (Brandes single-source accumulation)
# ---------------------------------------------------------------------------


def betweenness(graph: CoWordGraph) -> CentralityScores:
    """Unweighted shortest-path betweenness, each unordered node pair
    counted once; degrees reported alongside."""
    nodes = sorted(graph.node_frequency)
    if not nodes:
        raise DomainError("betweenness requires at least one node")
    adjacency = graph.adjacency()
    neighbors = {u: sorted(adjacency[u]) for u in nodes}
    scores = {u: 0.0 for u in nodes}

    for source in nodes:
        stack: list[str] = []
        predecessors: dict[str, list[str]] = {u: [] for u in nodes}
        sigma = {u: 0.0 for u in nodes}
        distance = {u: -1 for u in nodes}
        sigma[source] = 1.0
        distance[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            stack.append(u)
            for v in neighbors[u]:
                if distance[v] < 0:
                    distance[v] = distance[u] + 1
                    queue.append(v)
                if distance[v] == distance[u] + 1:
                    sigma[v] += sigma[u]
                    predecessors[v].append(u)
        delta = {u: 0.0 for u in nodes}
        while stack:
            w = stack.pop()
            for u in predecessors[w]:
                delta[u] += (sigma[u] / sigma[w]) * (1.0 + delta[w])
            if w != source:
                scores[w] += delta[w]

    return CentralityScores(
        betweenness={u: scores[u] / 2.0 for u in nodes},
        degree=graph.degrees(),
    )


# ---------------------------------------------------------------------------
# Cluster summaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClusterInfo:
    community_id: int
    size: int
    node_share_pct: float
    label_tokens: tuple[str, ...]
    top_betweenness_token: str


@dataclass(frozen=True)
class ClusterSummary:
    """Top-k clusters by node count, with degree-based labels, plus the
    graph-wide highest-betweenness token."""

    clusters: tuple[ClusterInfo, ...]
    total_clusters: int
    total_nodes: int
    top_betweenness_token: str


def cluster_summary(
    graph: CoWordGraph,
    partition: CommunityPartition,
    scores: CentralityScores,
    k: int = 3,
) -> ClusterSummary:
    """Summarize the ``k`` most crowded clusters.

    Clusters are ranked by node count (ties by smallest community id);
    per-cluster labels are the top-3 nodes by degree (ties lexicographic).
    If ``k`` exceeds the cluster count, all clusters are returned.
    """
    _check_same_nodes(graph, partition, scores)
    total = graph.node_count()
    members: dict[int, list[str]] = defaultdict(list)
    for node, community in partition.assignment.items():
        members[community].append(node)

    ranked = sorted(members.items(), key=lambda item: (-len(item[1]), item[0]))
    infos = []
    for community, nodes in ranked[:k]:
        by_degree = sorted(nodes, key=lambda t: (-scores.degree[t], t))
        top_bet = min(nodes, key=lambda t: (-scores.betweenness[t], t))
        infos.append(
            ClusterInfo(
                community_id=community,
                size=len(nodes),
                node_share_pct=100.0 * len(nodes) / total,
                label_tokens=tuple(by_degree[:3]),
                top_betweenness_token=top_bet,
            )
        )
    global_top = min(
        graph.node_frequency, key=lambda t: (-scores.betweenness[t], t)
    )
    return ClusterSummary(
        clusters=tuple(infos),
        total_clusters=len(members),
        total_nodes=total,
        top_betweenness_token=global_top,
    )


def _check_same_nodes(graph, partition, scores):
    nodes = graph.nodes
    for label, mapping in (
        ("partition", partition.assignment),
        ("betweenness", scores.betweenness),
        ("degree", scores.degree),
    ):
        extra = set(mapping) - nodes
        missing = nodes - set(mapping)
        if extra:
            raise ConsistencyError(
                f"{label} references nodes absent from the graph: {sorted(extra)[:5]}"
            )
        if missing:
            raise ConsistencyError(
                f"{label} misses graph nodes: {sorted(missing)[:5]}"
            )


# ---------------------------------------------------------------------------
# Graph export (GEXF 1.2draft / GraphML)
# ---------------------------------------------------------------------------

GEXF_NAMESPACE = "http://www.gexf.net/1.2draft"
GRAPHML_NAMESPACE = "http://graphml.graphdrawing.org/xmlns"


def export_graph(
    graph: CoWordGraph,
    partition: CommunityPartition,
    scores: CentralityScores,
    format: str = "gexf",
) -> bytes:
    """Serialize the graph with community / betweenness / degree /
    title_frequency node attributes and edge weights, as UTF-8 XML in
    GEXF 1.2draft or GraphML."""
    _check_same_nodes(graph, partition, scores)
    if format == "gexf":
        root = _gexf_tree(graph, partition, scores)
    elif format == "graphml":
        root = _graphml_tree(graph, partition, scores)
    else:
        raise DomainError(f"unsupported graph format {format!r} (gexf, graphml)")
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)


def _gexf_tree(graph, partition, scores) -> ET.Element:
    root = ET.Element("gexf", {"xmlns": GEXF_NAMESPACE, "version": "1.2"})
    graph_el = ET.SubElement(
        root, "graph", {"mode": "static", "defaultedgetype": "undirected"}
    )
    attrs = ET.SubElement(graph_el, "attributes", {"class": "node"})
    for attr_id, (title, kind) in enumerate(
        [
            ("community", "integer"),
            ("betweenness", "double"),
            ("degree", "integer"),
            ("title_frequency", "integer"),
        ]
    ):
        ET.SubElement(
            attrs, "attribute", {"id": str(attr_id), "title": title, "type": kind}
        )
    nodes_el = ET.SubElement(graph_el, "nodes")
    for node in sorted(graph.node_frequency):
        node_el = ET.SubElement(nodes_el, "node", {"id": node, "label": node})
        values = ET.SubElement(node_el, "attvalues")
        for attr_id, value in enumerate(
            [
                partition.assignment[node],
                repr(scores.betweenness[node]),
                scores.degree[node],
                graph.node_frequency[node],
            ]
        ):
            ET.SubElement(
                values, "attvalue", {"for": str(attr_id), "value": str(value)}
            )
    edges_el = ET.SubElement(graph_el, "edges")
    for edge_id, ((u, v), w) in enumerate(sorted(graph.edges.items())):
        ET.SubElement(
            edges_el,
            "edge",
            {"id": str(edge_id), "source": u, "target": v, "weight": str(w)},
        )
    return root


def _graphml_tree(graph, partition, scores) -> ET.Element:
    root = ET.Element("graphml", {"xmlns": GRAPHML_NAMESPACE})
    keys = [
        ("d_community", "node", "community", "int"),
        ("d_betweenness", "node", "betweenness", "double"),
        ("d_degree", "node", "degree", "int"),
        ("d_title_frequency", "node", "title_frequency", "int"),
        ("d_weight", "edge", "weight", "int"),
    ]
    for key_id, domain, name, kind in keys:
        ET.SubElement(
            root,
            "key",
            {"id": key_id, "for": domain, "attr.name": name, "attr.type": kind},
        )
    graph_el = ET.SubElement(root, "graph", {"id": "G", "edgedefault": "undirected"})
    for node in sorted(graph.node_frequency):
        node_el = ET.SubElement(graph_el, "node", {"id": node})
        for key_id, value in [
            ("d_community", partition.assignment[node]),
            ("d_betweenness", repr(scores.betweenness[node])),
            ("d_degree", scores.degree[node]),
            ("d_title_frequency", graph.node_frequency[node]),
        ]:
            data = ET.SubElement(node_el, "data", {"key": key_id})
            data.text = str(value)
    for (u, v), w in sorted(graph.edges.items()):
        edge_el = ET.SubElement(graph_el, "edge", {"source": u, "target": v})
        data = ET.SubElement(edge_el, "data", {"key": "d_weight"})
        data.text = str(w)
    return root
