#!/usr/bin/env python3
"""Build the shipped country adjacency graph and query border-hop distances.

The graph covers every registry country: land borders, special edges for
territories (Hong Kong-China), island nations linked to their nearest
neighbor, and component bridges that keep the whole thing connected.
"""

import importlib.resources

from geoeval import build_graph, hop_distance, load_edges, load_registry

data = importlib.resources.files("geoeval") / "data"
registry = load_registry(data / "registry.jsonl")
borders = load_edges(data / "border_edges.csv")
specials = load_edges(data / "special_edges.csv")

graph = build_graph(borders, specials, registry)
print(f"{len(graph.nodes)} countries, {len(graph.edges())} edges, "
      f"{len(graph.components())} component")

by_provenance = {}
for _, _, provenance in graph.edges():
    by_provenance[provenance] = by_provenance.get(provenance, 0) + 1
print("edge provenance:", by_provenance)

print("\nhop distances (border crossings):")
for a, b in [("KH", "TH"), ("HK", "CN"), ("PT", "DE"), ("SG", "MY"),
             ("BR", "PT"), ("US", "AR"), ("JP", "FR")]:
    name_a = registry.country(a).display_name
    name_b = registry.country(b).display_name
    print(f"  {name_a:>22} -> {name_b:<22} {hop_distance(graph, a, b)}")

print("\nisland bridges chosen by centroid haversine:")
for a, b, provenance in graph.edges():
    if provenance == "island_bridge":
        print(f"  {a} - {b}")
