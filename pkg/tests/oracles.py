"""Independent reference implementations the tests check the library against.

Everything here deliberately avoids the library's own algorithms: convolution
is dense direct summation, component extraction is BFS flood fill, graph sets
are built by literal enumeration of the defining conditions.
"""

from collections import deque

import numpy as np

from crackscan.hessian import make_kernel


def fold_indices(n: int, radius: int) -> np.ndarray:
    """Mirror (reflect-without-repeat) index extension, period 2(n-1)."""
    idx = np.arange(-radius, n + radius)
    if n == 1:
        return np.zeros_like(idx)
    period = 2 * (n - 1)
    idx = np.mod(idx, period)
    return np.where(idx >= n, period - idx, idx)


def dense_hessian_oracle(vol, i: int, j: int, sigma: float) -> np.ndarray:
    """Direct (non-separable) 3D convolution with the tensor-product kernel."""
    orders = [0, 0, 0]
    if i == j:
        orders[i] = 2
    else:
        orders[i] = 1
        orders[j] = 1
    taps = [make_kernel(sigma, o).taps for o in orders]
    radius = make_kernel(sigma, 0).radius
    kernel = taps[0][:, None, None] * taps[1][None, :, None] * taps[2][None, None, :]
    data = vol.data.astype(np.float64)
    ext = data[
        np.ix_(
            fold_indices(data.shape[0], radius),
            fold_indices(data.shape[1], radius),
            fold_indices(data.shape[2], radius),
        )
    ]
    windows = np.lib.stride_tricks.sliding_window_view(ext, kernel.shape)
    flipped = kernel[::-1, ::-1, ::-1]
    return sigma * np.einsum("xyzabc,abc->xyz", windows, flipped)


def brute_force_graph(img: np.ndarray, delta: int):
    """Enumeration oracle: V, H, K, E straight from the set definitions."""
    w, h = img.shape
    vertices = [(x, y) for x in range(0, w, delta) for y in range(0, h, delta)]
    fg = {v for v in vertices if img[v]}
    halo = {
        v
        for v in vertices
        if v not in fg
        and any(max(abs(v[0] - p[0]), abs(v[1] - p[1])) == delta for p in fg)
    }
    edges = {
        frozenset((a, b))
        for a in halo
        for b in halo
        if a < b and (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 == delta * delta
    }
    return vertices, fg, halo, edges


def flood_fill_partition(halo: set, edges: set) -> set:
    """Component oracle over explicit vertex/edge sets: BFS flood fill."""
    adjacency = {v: [] for v in halo}
    for edge in edges:
        a, b = tuple(edge)
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = set()
    parts = set()
    for start in halo:
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        part = {start}
        while queue:
            v = queue.popleft()
            for n in adjacency[v]:
                if n not in seen:
                    seen.add(n)
                    part.add(n)
                    queue.append(n)
        parts.add(frozenset(part))
    return parts


def flood_fill_over_kmask(k_mask: np.ndarray, delta: int) -> set:
    """Component oracle over a reduced-graph vertex mask: BFS flood fill.

    Returns the partition as a set of frozensets of pixel coordinates,
    directly comparable with the DFS result.
    """
    nlx, nly = k_mask.shape
    seen = np.zeros_like(k_mask, dtype=bool)
    parts = set()
    for i0, j0 in np.argwhere(k_mask):
        if seen[i0, j0]:
            continue
        queue = deque([(int(i0), int(j0))])
        seen[i0, j0] = True
        part = set()
        while queue:
            i, j = queue.popleft()
            part.add((i * delta, j * delta))
            for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if 0 <= ni < nlx and 0 <= nj < nly and k_mask[ni, nj] and not seen[ni, nj]:
                    seen[ni, nj] = True
                    queue.append((ni, nj))
        parts.add(frozenset(part))
    return parts
