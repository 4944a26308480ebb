"""Country adjacency graph and border-hop error analysis.

The graph starts from a shipped land-border edge list, adds special edges
for territories and enclaves (e.g. Hong Kong-China), links isolated island
nations to their nearest neighbor by centroid haversine distance, and then
bridges any remaining components so the whole graph is connected. Hop
distance is plain BFS shortest path; every edge counts as one border
crossing regardless of provenance.
"""

from __future__ import annotations

import csv
import json
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import GeoEvalError
from .manifest import SampleRecord
from .registry import CountryId, CountryRegistry

EARTH_RADIUS_KM = 6371.0088

PROVENANCE_BORDER = "border"
PROVENANCE_SPECIAL = "special"
PROVENANCE_ISLAND = "island_bridge"
PROVENANCE_COMPONENT = "component_bridge"


def haversine_km(lat_a: float, lon_a: float, lat_b: float, lon_b: float) -> float:
    """Great-circle distance in km on a sphere of radius 6371.0088 km."""
    for lat, lon in ((lat_a, lon_a), (lat_b, lon_b)):
        if not -90.0 <= lat <= 90.0:
            raise GeoEvalError(f"latitude {lat} out of [-90,90]")
        if not -180.0 < lon <= 180.0:
            raise GeoEvalError(f"longitude {lon} out of (-180,180]")
    phi_a, phi_b = math.radians(lat_a), math.radians(lat_b)
    dphi = math.radians(lat_b - lat_a)
    dlam = math.radians(lon_b - lon_a)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi_a) * math.cos(phi_b) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def _code(country: CountryId | str) -> str:
    return country.code if isinstance(country, CountryId) else country


class CountryGraph:
    """Undirected, connected adjacency over country codes with edge provenance."""

    def __init__(self) -> None:
        self._adj: dict[str, set[str]] = {}
        self._provenance: dict[frozenset[str], str] = {}
        self._bfs_cache: dict[str, dict[str, int]] = {}

    @property
    def nodes(self) -> set[str]:
        return set(self._adj)

    def __contains__(self, country: CountryId | str) -> bool:
        return _code(country) in self._adj

    def neighbors(self, country: CountryId | str) -> set[str]:
        code = _code(country)
        if code not in self._adj:
            raise GeoEvalError(f"country {code!r} not in graph")
        return set(self._adj[code])

    def edges(self) -> list[tuple[str, str, str]]:
        """Sorted (a, b, provenance) triples with a < b."""
        out = []
        for pair, prov in self._provenance.items():
            a, b = sorted(pair)
            out.append((a, b, prov))
        return sorted(out)

    def degree(self, code: str) -> int:
        return len(self._adj[code])

    def _add_node(self, code: str) -> None:
        self._adj.setdefault(code, set())

    def _add_edge(self, a: str, b: str, provenance: str) -> bool:
        if a == b:
            raise GeoEvalError(f"self-loop edge on {a!r}")
        pair = frozenset((a, b))
        if pair in self._provenance:
            return False
        self._adj[a].add(b)
        self._adj[b].add(a)
        self._provenance[pair] = provenance
        return True

    def components(self) -> list[set[str]]:
        seen: set[str] = set()
        comps: list[set[str]] = []
        for start in sorted(self._adj):
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if v not in comp:
                        comp.add(v)
                        queue.append(v)
            seen |= comp
            comps.append(comp)
        return comps

    def _distances_from(self, source: str) -> dict[str, int]:
        # Memoized per source; values are idempotent so races are harmless.
        cached = self._bfs_cache.get(source)
        if cached is not None:
            return cached
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in self._adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        self._bfs_cache[source] = dist
        return dist

    def to_json_dict(self) -> dict:
        return {
            "nodes": sorted(self._adj),
            "edges": [{"a": a, "b": b, "provenance": p} for a, b, p in self.edges()],
        }


def hop_distance(graph: CountryGraph, from_country: CountryId | str, to_country: CountryId | str) -> int:
    """Shortest-path length in border crossings; 0 iff the countries coincide."""
    a, b = _code(from_country), _code(to_country)
    for code in (a, b):
        if code not in graph:
            raise GeoEvalError(f"country {code!r} not in graph")
    dist = graph._distances_from(a)
    try:
        return dist[b]
    except KeyError:
        # Unreachable after build_graph's connectivity repair.
        raise GeoEvalError(f"no path between {a!r} and {b!r}") from None


def build_graph(
    border_edges: Iterable[tuple[str, str]],
    special_edges: Iterable[tuple[str, str]],
    registry: CountryRegistry,
) -> CountryGraph:
    """Assemble the full adjacency graph over every registry country.

    All registry countries become nodes (so shortest paths may pass
    through countries outside an evaluation label space). Construction is
    deterministic: distance ties break by lexicographic code order.
    """
    graph = CountryGraph()
    codes = registry.codes()
    if not codes:
        raise GeoEvalError("registry has no countries")
    for code in codes:
        graph._add_node(code)

    for provenance, edge_list in ((PROVENANCE_BORDER, border_edges), (PROVENANCE_SPECIAL, special_edges)):
        for a, b in edge_list:
            if a not in registry or b not in registry:
                missing = a if a not in registry else b
                raise GeoEvalError(f"edge ({a},{b}): code {missing!r} not in registry")
            graph._add_edge(a, b, provenance)

    def nearest(code: str, candidates: Iterable[str]) -> str:
        lat, lon = registry.centroid(code)
        best_code, best_dist = "", math.inf
        for other in sorted(candidates):
            if other == code:
                continue
            olat, olon = registry.centroid(other)
            d = haversine_km(lat, lon, olat, olon)
            if d < best_dist:
                best_code, best_dist = other, d
        return best_code

    # Isolated island nations join their nearest neighbor. The degree-0 set
    # is snapshotted first so processing order cannot change the result.
    isolated_islands = [c for c in codes if registry.is_island(c) and graph.degree(c) == 0]
    for code in isolated_islands:
        graph._add_edge(code, nearest(code, codes), PROVENANCE_ISLAND)

    # Bridge remaining components by the globally closest centroid pair.
    while True:
        comps = graph.components()
        if len(comps) <= 1:
            break
        best: tuple[float, str, str] | None = None
        for i, comp_a in enumerate(comps):
            for comp_b in comps[i + 1:]:
                for a in sorted(comp_a):
                    alat, alon = registry.centroid(a)
                    for b in sorted(comp_b):
                        blat, blon = registry.centroid(b)
                        d = haversine_km(alat, alon, blat, blon)
                        lo, hi = sorted((a, b))
                        key = (d, lo, hi)
                        if best is None or key < best:
                            best = key
        assert best is not None
        graph._add_edge(best[1], best[2], PROVENANCE_COMPONENT)

    if len(graph.components()) != 1:
        raise GeoEvalError("graph still disconnected after bridging")
    return graph


@dataclass(frozen=True)
class HopHistogram:
    """Distribution of incorrect Top-1 predictions over border-hop distance.

    Unplaceable errors (empty prediction list, or prediction/ground truth
    absent from the graph) are counted separately and excluded from the
    hop percentages' denominator.
    """

    h1: int
    h2: int
    h3_plus: int
    n_errors: int
    n_unplaceable: int

    def __post_init__(self) -> None:
        if self.h1 + self.h2 + self.h3_plus + self.n_unplaceable != self.n_errors:
            raise GeoEvalError("hop histogram buckets do not sum to n_errors")

    @property
    def n_placed(self) -> int:
        return self.n_errors - self.n_unplaceable

    def percentages(self) -> tuple[float, float, float] | None:
        """(H-1, H-2, H-3+) as fractions of placed errors; None when no errors placed."""
        if self.n_placed == 0:
            return None
        return (self.h1 / self.n_placed, self.h2 / self.n_placed, self.h3_plus / self.n_placed)


def hop_histogram(
    graph: CountryGraph,
    samples: Sequence[SampleRecord],
    predictions: Mapping[str, Sequence[CountryId]],
) -> HopHistogram:
    """Bucket every incorrect Top-1 prediction by hop distance to the truth."""
    h1 = h2 = h3 = unplaceable = errors = 0
    for sample in samples:
        try:
            ranked = predictions[sample.sample_id]
        except KeyError:
            raise GeoEvalError(
                f"no prediction entry for sample_id {sample.sample_id!r}"
            ) from None
        if len(ranked) == 0:
            errors += 1
            unplaceable += 1
            continue
        predicted = ranked[0]
        if predicted == sample.country:
            continue
        errors += 1
        if predicted not in graph or sample.country not in graph:
            unplaceable += 1
            continue
        hops = hop_distance(graph, predicted, sample.country)
        if hops == 1:
            h1 += 1
        elif hops == 2:
            h2 += 1
        else:
            h3 += 1
    return HopHistogram(h1=h1, h2=h2, h3_plus=h3, n_errors=errors, n_unplaceable=unplaceable)


def load_edges(path: str | Path) -> list[tuple[str, str]]:
    """Read a `code_a,code_b` edge CSV (header line optional)."""
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"edge file not found: {path}")
    edges: list[tuple[str, str]] = []
    with path.open(encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (lineno == 1 and row == ["code_a", "code_b"]):
                continue
            if len(row) != 2:
                raise GeoEvalError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            edges.append((row[0].strip(), row[1].strip()))
    return edges


def export_graph(graph: CountryGraph, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(graph.to_json_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
