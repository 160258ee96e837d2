"""Reduced surface lattice graph over a binary slice, and its DFS components.

Given a binary image and a mesh size delta, the lattice vertices are the
pixels of delta * Z^2 inside the image window, anchored at pixel (0, 0).
Foreground lattice vertices form the set H; the graph's vertex set K is the
halo of H: lattice vertices one lattice step away from some H vertex
(including diagonal steps) that are not foreground themselves. Edges join
K vertices at Euclidean pixel distance exactly delta, i.e. axis-aligned
lattice neighbors.

Components are extracted with an iterative depth-first search over an
explicit stack; recursion depth must not bound the component size, since a
crack outline can thread through the whole slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["SurfaceLatticeGraph", "Component", "build_graph", "connected_components", "graph_text"]


@dataclass(frozen=True)
class SurfaceLatticeGraph:
    """Reduced graph at mesh ``delta``: vertex mask over the lattice grid.

    ``k_mask[i, j]`` marks lattice vertex (i, j), i.e. pixel (i*delta, j*delta),
    as a graph vertex. ``h_mask`` marks foreground lattice vertices (kept for
    diagnostics; disjoint from ``k_mask`` unless foreground inclusion was
    requested at build time).
    """

    delta: int
    slice_dims: tuple[int, int]
    k_mask: np.ndarray
    h_mask: np.ndarray

    def __post_init__(self):
        for name in ("k_mask", "h_mask"):
            arr = np.ascontiguousarray(np.asarray(getattr(self, name), dtype=bool))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.k_mask.shape != self.h_mask.shape:
            raise ParameterError("k_mask and h_mask must share the lattice shape")

    @property
    def lattice_dims(self) -> tuple[int, int]:
        return self.k_mask.shape

    @property
    def vertex_count(self) -> int:
        return int(self.k_mask.sum())

    @property
    def edge_count(self) -> int:
        k = self.k_mask
        return int((k[:-1, :] & k[1:, :]).sum() + (k[:, :-1] & k[:, 1:]).sum())

    def vertices(self) -> np.ndarray:
        """K vertices as pixel coordinates, lexicographically sorted, shape (n, 2)."""
        return np.argwhere(self.k_mask) * self.delta


@dataclass(frozen=True)
class Component:
    """One connected component of the reduced graph.

    Vertices are pixel coordinates in DFS discovery order. ``touches_boundary``
    is true iff some vertex lies in the first or last lattice row or column.
    """

    vertices: tuple[tuple[int, int], ...]
    touches_boundary: bool = field(default=False)

    @property
    def size(self) -> int:
        return len(self.vertices)


def build_graph(image: np.ndarray, delta: int, include_foreground: bool = False) -> SurfaceLatticeGraph:
    """Build the reduced lattice graph of a binary slice at mesh size ``delta``.

    ``include_foreground=True`` adds the foreground lattice vertices H into
    the vertex set (sensitivity studies); by default K excludes them.
    """
    delta = int(delta)
    if delta < 1:
        raise ParameterError(f"mesh size must be >= 1, got {delta}")
    img = np.asarray(image)
    if img.ndim != 2 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ParameterError(f"slice must be a non-empty 2D array, got shape {img.shape}")

    lat = img[::delta, ::delta] != 0
    h_mask = lat

    # halo: lattice vertices with an H vertex among their 8 lattice neighbors
    padded = np.zeros((lat.shape[0] + 2, lat.shape[1] + 2), dtype=bool)
    padded[1:-1, 1:-1] = h_mask
    near = np.zeros_like(h_mask)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            near |= padded[1 + di : 1 + di + lat.shape[0], 1 + dj : 1 + dj + lat.shape[1]]
    k_mask = near & ~h_mask
    if include_foreground:
        k_mask = k_mask | h_mask

    return SurfaceLatticeGraph(
        delta=delta, slice_dims=(img.shape[0], img.shape[1]), k_mask=k_mask, h_mask=h_mask
    )


# DFS neighbor order; pushed reversed so vertices pop in this order
_NEIGHBOR_STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))


def connected_components(graph: SurfaceLatticeGraph) -> list[Component]:
    """Connected components of the reduced graph via iterative DFS.

    Components are emitted in order of their lexicographically smallest
    vertex; vertices within a component appear in discovery order. The stack
    is explicit, so component size is bounded by memory, not recursion depth.
    """
    k = graph.k_mask
    nlx, nly = k.shape
    delta = graph.delta
    visited = np.zeros_like(k, dtype=bool)
    components: list[Component] = []

    for i0, j0 in np.argwhere(k):
        if visited[i0, j0]:
            continue
        visited[i0, j0] = True
        stack = [(int(i0), int(j0))]
        vertices: list[tuple[int, int]] = []
        touches = False
        while stack:
            i, j = stack.pop()
            vertices.append((i * delta, j * delta))
            if i == 0 or i == nlx - 1 or j == 0 or j == nly - 1:
                touches = True
            for di, dj in reversed(_NEIGHBOR_STEPS):
                ni, nj = i + di, j + dj
                if 0 <= ni < nlx and 0 <= nj < nly and k[ni, nj] and not visited[ni, nj]:
                    visited[ni, nj] = True
                    stack.append((ni, nj))
        components.append(Component(vertices=tuple(vertices), touches_boundary=touches))
    return components


def graph_text(graph: SurfaceLatticeGraph) -> str:
    """Adjacency-list dump for cross-implementation diffing.

    One ``v <x> <y>`` line per vertex (pixel coordinates, lexicographic order)
    followed by one ``e <i> <j>`` line per edge with i < j indexing the vertex
    lines.
    """
    coords = np.argwhere(graph.k_mask)
    index = {(int(i), int(j)): n for n, (i, j) in enumerate(coords)}
    lines = [f"v {int(i) * graph.delta} {int(j) * graph.delta}" for i, j in coords]
    for n, (i, j) in enumerate(coords):
        for ni, nj in ((int(i) + 1, int(j)), (int(i), int(j) + 1)):
            m = index.get((ni, nj))
            if m is not None:
                lines.append(f"e {n} {m}")
    return "\n".join(lines) + ("\n" if lines else "")
