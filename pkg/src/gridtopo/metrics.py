"""Per-snapshot network metrics: degrees, paths, clustering, modularity.

Conventions used throughout:

* average degree <k> = 2E/N
* average path length L = mean hop distance over ordered connected pairs,
  restricted to the largest connected component (the all-pairs mean is
  undefined across components)
* clustering C = mean over all nodes of 2*E_i / (k_i*(k_i-1)), where E_i
  counts edges among node i's neighbours; nodes with degree < 2 contribute 0
* random-graph baselines: L_r = (ln N - 0.5772)/ln<k> + 0.5 and C_r = <k>/N
* small-world coefficient sigma = (C/C_r) / (L/L_r), small-world iff > 1
* modularity Q of a node partition g:
  Q = (1/2E) * sum_ij (A_ij - k_i*k_j/2E) * [g_i == g_j]
  over ordered pairs including i = j (A_ii = 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import GraphSnapshot, connected_components, shortest_path_lengths

# truncated Euler-Mascheroni constant, kept at 4 decimals on purpose: the
# random-baseline formula is defined with exactly this value
EULER_GAMMA_TRUNCATED = 0.5772


@dataclass(frozen=True)
class NodeLocalStats:
    degree: int
    neighbor_edge_count: int
    local_clustering: float


@dataclass(frozen=True)
class DegreeStats:
    degrees: tuple[int, ...]
    average: float
    histogram: tuple[int, ...]  # counts indexed by degree 0..max


@dataclass(frozen=True)
class MetricsRecord:
    """One year's full metric row."""

    year: int
    num_nodes: int
    num_edges: int
    avg_degree: float | None
    diameter: int | None
    avg_path_length: float | None
    clustering: float | None
    random_path_length: float | None
    random_clustering: float | None
    sigma: float | None
    modularity_q: float | None
    component_count: int
    largest_component_size: int

    def to_csv_row(self) -> str:
        return ",".join(format_metric_value(v) for v in self.as_tuple())

    def as_tuple(self) -> tuple:
        return (
            self.year,
            self.num_nodes,
            self.num_edges,
            self.avg_degree,
            self.diameter,
            self.avg_path_length,
            self.clustering,
            self.random_path_length,
            self.random_clustering,
            self.sigma,
            self.modularity_q,
            self.component_count,
            self.largest_component_size,
        )

    def as_dict(self) -> dict:
        return dict(zip(METRICS_CSV_COLUMNS, self.as_tuple()))


METRICS_CSV_COLUMNS = (
    "year",
    "N",
    "E",
    "avg_degree",
    "diameter",
    "L",
    "C",
    "L_r",
    "C_r",
    "sigma",
    "Q",
    "components",
    "lcc_size",
)
METRICS_CSV_HEADER = ",".join(METRICS_CSV_COLUMNS)


def format_metric_value(value) -> str:
    """CSV cell formatting: NA for absent, 6 significant digits for floats."""
    if value is None:
        return "NA"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def degree_stats(snapshot: GraphSnapshot) -> DegreeStats:
    """Per-node degrees, the exact average 2E/N, and a degree histogram."""
    n = snapshot.num_nodes
    if n == 0:
        raise ValueError("degree statistics undefined: graph has no nodes")
    degrees = snapshot.degrees()
    histogram = [0] * (max(degrees) + 1)
    for k in degrees:
        histogram[k] += 1
    return DegreeStats(degrees, 2 * snapshot.num_edges / n, tuple(histogram))


def _largest_component_path_stats(snapshot: GraphSnapshot) -> tuple[int, int, int]:
    """(sum of ordered-pair distances, max distance, size) over the LCC."""
    parts = connected_components(snapshot)
    members = sorted(parts.largest)
    if len(members) < 2:
        raise ValueError("path metrics undefined: largest component has fewer than 2 nodes")
    total = 0
    longest = 0
    for source in members:
        dist = shortest_path_lengths(snapshot, source)
        for target in members:
            d = dist[target]
            total += d
            if d > longest:
                longest = d
    return total, longest, len(members)


def average_path_length(snapshot: GraphSnapshot) -> float:
    """Mean hop distance over ordered pairs of the largest component."""
    total, _, size = _largest_component_path_stats(snapshot)
    return total / (size * (size - 1))


def diameter(snapshot: GraphSnapshot) -> int:
    """Longest shortest path within the largest component."""
    _, longest, _ = _largest_component_path_stats(snapshot)
    return longest


def clustering_coefficient(snapshot: GraphSnapshot) -> tuple[float, tuple[NodeLocalStats, ...]]:
    """Mean local clustering over all nodes, with per-node detail."""
    n = snapshot.num_nodes
    if n == 0:
        raise ValueError("clustering undefined: graph has no nodes")
    per_node = []
    total = 0.0
    for i in range(n):
        nbrs = snapshot.neighbors(i)
        k = len(nbrs)
        links = 0
        for a_pos in range(k):
            nbrs_a = snapshot.neighbor_set(nbrs[a_pos])
            for b_pos in range(a_pos + 1, k):
                if nbrs[b_pos] in nbrs_a:
                    links += 1
        local = 2 * links / (k * (k - 1)) if k >= 2 else 0.0
        per_node.append(NodeLocalStats(k, links, local))
        total += local
    return total / n, tuple(per_node)


def random_baselines(num_nodes: int, avg_degree: float) -> tuple[float, float]:
    """Random-graph reference values (L_r, C_r) for a graph of this size."""
    if num_nodes < 2:
        raise ValueError("random baseline undefined: need at least 2 nodes")
    if avg_degree <= 1:
        raise ValueError("random baseline undefined: average degree must exceed 1")
    l_r = (math.log(num_nodes) - EULER_GAMMA_TRUNCATED) / math.log(avg_degree) + 0.5
    c_r = avg_degree / num_nodes
    return l_r, c_r


def small_world_sigma(
    clustering: float,
    random_clustering: float,
    path_length: float,
    random_path_length: float,
) -> tuple[float, bool]:
    """Small-world coefficient and the sigma > 1 classification."""
    if clustering < 0:
        raise ValueError("clustering must be non-negative")
    if random_clustering <= 0 or path_length <= 0 or random_path_length <= 0:
        raise ValueError("baselines and path length must be positive")
    sigma = (clustering / random_clustering) / (path_length / random_path_length)
    return sigma, sigma > 1


def modularity(snapshot: GraphSnapshot, assignment) -> float:
    """Modularity Q of a community assignment.

    ``assignment`` is a sequence of community labels indexed by node, or
    any object with a ``membership`` attribute holding one.
    """
    membership = getattr(assignment, "membership", assignment)
    n = snapshot.num_nodes
    two_e = 2 * snapshot.num_edges
    if two_e == 0:
        raise ValueError("modularity undefined: graph has no edges")
    if len(membership) != n or any(g is None for g in membership):
        raise ValueError("assignment must cover every node exactly once")
    intra: dict[int, int] = {}
    degree_sum: dict[int, int] = {}
    for i in range(n):
        g = membership[i]
        degree_sum[g] = degree_sum.get(g, 0) + snapshot.degree(i)
    for i, j in snapshot.edges():
        if membership[i] == membership[j]:
            g = membership[i]
            intra[g] = intra.get(g, 0) + 1
    value = 0.0
    for g in sorted(degree_sum):
        value += 2 * intra.get(g, 0) - degree_sum[g] * degree_sum[g] / two_e
    return value / two_e
