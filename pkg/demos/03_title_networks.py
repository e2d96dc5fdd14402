"""Title co-word networks
==========================

Builds a semantic network from article titles: nodes are content words
(stopwords and numerals removed), edges count the titles in which two
words co-occur.  Communities come from seeded greedy modularity
optimization; betweenness highlights the words that mediate between
topics.  The graph exports to GEXF for rendering in external tools.

Run:  python demos/03_title_networks.py
"""

import tempfile
from pathlib import Path

from lexigauge import (
    GraphPolicy,
    betweenness,
    build_coword_graph,
    cluster_summary,
    export_graph,
    louvain_communities,
)

# Two planted topics plus one deliberate bridge word ("evaluation") that
# appears with both vocabularies: it should carry the highest betweenness.
titles = [
    "solar panel efficiency models",
    "panel efficiency under partial shade",
    "solar inverter efficiency testing",
    "inverter models for panel arrays",
    "solar array shade models",
    "classroom reading outcomes in schools",
    "reading outcomes and teacher feedback",
    "teacher feedback in classroom settings",
    "schools, feedback, and reading growth",
    "classroom growth outcomes study",
    "solar panel evaluation",
    "inverter evaluation methods",
    "reading evaluation rubric",
    "classroom evaluation practice",
]

graph = build_coword_graph(titles, GraphPolicy(min_title_frequency=2))
print(f"graph: {graph.node_count()} nodes, {graph.edge_count()} edges")

partition = louvain_communities(graph, seed=0)
print(f"communities: {partition.community_count()} (Q = {partition.modularity_q:.3f})")

scores = betweenness(graph)
summary = cluster_summary(graph, partition, scores)
for info in summary.clusters:
    print(f"cluster {info.community_id}: {info.size} nodes "
          f"({info.node_share_pct:.1f}%), labels {', '.join(info.label_tokens)}")
print("highest-betweenness word:", summary.top_betweenness_token)

out = Path(tempfile.mkdtemp(prefix="lexigauge-demo-")) / "titles.gexf"
out.write_bytes(export_graph(graph, partition, scores, "gexf"))
print("GEXF written to", out)
