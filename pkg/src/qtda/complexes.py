"""Vietoris-Rips clique complexes, boundary operators, and exact Betti numbers.

Simplices are plain tuples of 0-based vertex indices in strictly ascending
order.  Per-dimension simplex lists are kept lexicographically sorted, so the
rows and columns of every boundary matrix have a canonical order.

Betti numbers are computed classically here and serve as the oracle against
which the phase-estimation pipeline is checked.  Ranks are taken over the
integers (fraction-free Gaussian elimination), never by thresholding floats;
a float eigenvalue kernel count exists only as a cross-check for tests.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDimensionError

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class PointCloud:
    """Finite point cloud in R^m, one row per point."""

    points: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.points, dtype=float)
        if arr.ndim != 2:
            raise ValueError("points must be a 2-D array, one row per point")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("point cloud needs at least one point and one coordinate")
        if not np.all(np.isfinite(arr)):
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", arr)

    @classmethod
    def from_rows(cls, rows) -> "PointCloud":
        return cls(np.asarray(rows, dtype=float))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def distance_matrix(self) -> np.ndarray:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt((diff * diff).sum(axis=-1))


@dataclass(frozen=True)
class NeighborhoodGraph:
    """Undirected graph of all point pairs within the grouping scale.

    ``epsilon`` is None for graphs without a metric origin (random models).
    """

    n: int
    edges: frozenset[tuple[int, int]]
    epsilon: float | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) is not an ordered in-range pair")
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex with canonically ordered simplex lists.

    ``simplices_by_dim[k]`` holds the k-simplices sorted lexicographically.
    The complex is face-closed but not necessarily the clique complex of its
    1-skeleton (explicit construction may leave cliques unfilled).
    """

    graph: NeighborhoodGraph
    simplices_by_dim: tuple[tuple[Simplex, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def max_dim(self) -> int:
        return len(self.simplices_by_dim) - 1

    def simplices(self, k: int) -> tuple[Simplex, ...]:
        if 0 <= k <= self.max_dim:
            return self.simplices_by_dim[k]
        return ()

    def size(self, k: int) -> int:
        return len(self.simplices(k))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.size(k) for k in range(self.max_dim + 1))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.graph.epsilon,
            "simplices": {
                str(k): [list(s) for s in self.simplices_by_dim[k]]
                for k in range(self.max_dim + 1)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimplicialComplex":
        simplices = {int(k): [tuple(s) for s in v] for k, v in data["simplices"].items()}
        return complex_from_simplices(int(data["n"]), simplices, epsilon=data.get("epsilon"))

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed incidence matrix of k-simplices over (k-1)-faces."""

    k: int
    matrix: np.ndarray


@dataclass(frozen=True)
class Laplacian:
    """Combinatorial Laplacian in dimension k: d_k^T d_k + d_{k+1} d_{k+1}^T."""

    k: int
    matrix: np.ndarray


def build_rips_graph(cloud: PointCloud, epsilon: float) -> NeighborhoodGraph:
    """Connect every pair of points at Euclidean distance <= epsilon (inclusive)."""
    if epsilon < 0:
        raise ValueError("grouping scale epsilon must be nonnegative")
    dist = cloud.distance_matrix()
    edges = frozenset(
        (i, j)
        for i, j in itertools.combinations(range(cloud.n), 2)
        if dist[i, j] <= epsilon
    )
    return NeighborhoodGraph(n=cloud.n, edges=edges, epsilon=float(epsilon))


def build_complex(graph: NeighborhoodGraph, max_dim: int) -> SimplicialComplex:
    """Expand a neighborhood graph to its clique complex up to max_dim.

    S_k is the set of all (k+1)-cliques of the graph, found by extending each
    k-clique with vertices above its maximum index that are adjacent to every
    member.  Extending in ascending vertex order keeps each level
    lexicographically sorted.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    if max_dim > graph.n - 1:
        raise ValueError(f"max_dim {max_dim} exceeds n - 1 = {graph.n - 1}")
    adj = graph.adjacency()
    levels: list[tuple[Simplex, ...]] = [tuple((v,) for v in range(graph.n))]
    if max_dim >= 1:
        levels.append(tuple(sorted(graph.edges)))
    for _ in range(2, max_dim + 1):
        prev = levels[-1]
        nxt: list[Simplex] = []
        for s in prev:
            common = set.intersection(*(adj[v] for v in s)) if s else set()
            for v in sorted(c for c in common if c > s[-1]):
                nxt.append(s + (v,))
        levels.append(tuple(nxt))
    return SimplicialComplex(graph=graph, simplices_by_dim=tuple(levels))


def complex_from_simplices(
    n: int,
    simplices: dict[int, list[Simplex]] | dict[int, tuple[Simplex, ...]],
    epsilon: float | None = None,
) -> SimplicialComplex:
    """Build a complex from explicit simplex lists, validating face closure.

    S_0 is always the full vertex set; higher dimensions are normalized
    (sorted, deduplicated) and every face of every simplex must be present one
    dimension down.  The 1-skeleton becomes the attached neighborhood graph.
    """
    if n < 1:
        raise ValueError("complex needs at least one vertex")
    top = max([k for k in simplices if simplices[k]], default=0)
    levels: list[tuple[Simplex, ...]] = [tuple((v,) for v in range(n))]
    for k in range(1, top + 1):
        given = simplices.get(k, ())
        normalized = sorted({tuple(s) for s in given})
        for s in normalized:
            if len(s) != k + 1 or any(a >= b for a, b in zip(s, s[1:])):
                raise ValueError(f"{s} is not a strictly ascending {k}-simplex")
            if s[0] < 0 or s[-1] >= n:
                raise ValueError(f"simplex {s} has out-of-range vertices")
        below = set(levels[k - 1])
        for s in normalized:
            for t in range(k + 1):
                face = s[:t] + s[t + 1 :]
                if face not in below:
                    raise ValueError(f"face {face} of {s} is missing: complex not closed")
        levels.append(tuple(normalized))
    graph = NeighborhoodGraph(
        n=n,
        edges=frozenset(levels[1]) if top >= 1 else frozenset(),
        epsilon=epsilon,
    )
    return SimplicialComplex(graph=graph, simplices_by_dim=tuple(levels))


def random_complex(n: int, edge_prob: float, max_dim: int, seed: int) -> SimplicialComplex:
    """Clique complex of an Erdos-Renyi graph G(n, edge_prob), deterministic in seed."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    draws = rng.random(len(pairs))
    edges = frozenset(pair for pair, u in zip(pairs, draws) if u < edge_prob)
    graph = NeighborhoodGraph(n=n, edges=edges, epsilon=None)
    return build_complex(graph, max_dim)


def boundary_matrix(cx: SimplicialComplex, k: int) -> BoundaryMatrix:
    """Signed boundary operator restricted to the simplices present in cx.

    Column j corresponds to the j-th k-simplex; the face obtained by dropping
    vertex t carries sign (-1)^(k-t), which makes the signs alternate down the
    column when the faces are read in lexicographic row order.  Every column
    has exactly k+1 nonzero entries.
    """
    if k < 1:
        raise ValueError("boundary operator is defined for k >= 1")
    top = cx.simplices(k)
    if not top:
        raise EmptyDimensionError(f"no {k}-simplices present")
    rows = {s: i for i, s in enumerate(cx.simplices(k - 1))}
    mat = np.zeros((len(rows), len(top)), dtype=np.int64)
    for j, s in enumerate(top):
        for t in range(k + 1):
            face = s[:t] + s[t + 1 :]
            mat[rows[face], j] = -1 if (k - t) % 2 else 1
    return BoundaryMatrix(k=k, matrix=mat)


def laplacian(cx: SimplicialComplex, k: int) -> Laplacian:
    """Combinatorial Laplacian Delta_k; missing boundary terms contribute zero."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = cx.size(k)
    if m == 0:
        raise EmptyDimensionError(f"no {k}-simplices present")
    mat = np.zeros((m, m), dtype=np.int64)
    if k >= 1:
        d_k = boundary_matrix(cx, k).matrix
        mat += d_k.T @ d_k
    if cx.size(k + 1) > 0:
        d_up = boundary_matrix(cx, k + 1).matrix
        mat += d_up @ d_up.T
    return Laplacian(k=k, matrix=mat)


def integer_rank(matrix: np.ndarray) -> int:
    """Exact rank of an integer matrix by Bareiss fraction-free elimination."""
    arr = np.asarray(matrix)
    if arr.size == 0:
        return 0
    rows = [[int(x) for x in row] for row in arr]
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, m):
            # the division by the previous pivot is exact in Bareiss elimination
            for j in range(c + 1, n):
                rows[i][j] = (rows[i][j] * rows[r][c] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        rank += 1
        r += 1
        if r == m:
            break
    return rank


def float_kernel_dimension(matrix: np.ndarray, tol: float = 1e-9) -> int:
    """Eigenvalue count below tol in magnitude; test cross-check only."""
    eigs = np.linalg.eigvalsh(np.asarray(matrix, dtype=float))
    return int(np.sum(np.abs(eigs) < tol))


def exact_betti(cx: SimplicialComplex, k: int) -> int:
    """k-th Betti number of the complex as built, by exact integer ranks.

    Computed two ways, dim ker Delta_k and dim ker d_k - rank d_{k+1}, which
    must agree.  Returns 0 when S_k is empty by convention.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = cx.size(k)
    if m == 0:
        return 0
    rank_down = integer_rank(boundary_matrix(cx, k).matrix) if k >= 1 else 0
    rank_up = integer_rank(boundary_matrix(cx, k + 1).matrix) if cx.size(k + 1) else 0
    by_ranks = m - rank_down - rank_up
    by_kernel = m - integer_rank(laplacian(cx, k).matrix)
    if by_ranks != by_kernel:
        raise RuntimeError(
            f"betti computations disagree in dimension {k}: "
            f"rank route {by_ranks}, Laplacian kernel {by_kernel}"
        )
    return by_kernel
