"""Scale-space Hessian-entry binarization of 3D gray volumes.

For a scale sigma the response at each voxel is the maximum over the six
distinct entries of the Hessian-of-Gaussian matrix and 0,

    L(p) = max(0, max_{i<=j} sigma * (I * d2G/dpi dpj)(p)),

thresholded at mean + 3 * sample sd of the response field. The multiscale
result is the voxelwise OR of the per-scale binarizations.

Each Hessian entry is computed by three sequential 1D convolutions with
sampled Gaussian-derivative kernels (tensor factorization of the 3D kernel),
using mirror (reflect-without-repeat) boundary handling. Derivative kernels
are corrected to sum exactly to zero so constant inputs map to zero response
at every scale.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.ndimage import convolve1d

from .errors import ParameterError
from .volume import BinaryVolume, GrayVolume

__all__ = [
    "DerivativeKernel1D",
    "make_kernel",
    "normalize_scales",
    "hessian_entry",
    "max_entry_response",
    "binarize_scale",
    "multiscale_filter",
]

# the six distinct (i, j) axis pairs, i <= j, axes 0..2 = x, y, z
HESSIAN_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class DerivativeKernel1D:
    """Sampled 1D Gaussian-derivative kernel with taps at offsets -radius..radius."""

    order: int
    radius: int
    taps: np.ndarray

    def __post_init__(self):
        taps = np.ascontiguousarray(np.asarray(self.taps, dtype=np.float64))
        if taps.shape != (2 * self.radius + 1,):
            raise ParameterError(
                f"kernel of radius {self.radius} needs {2 * self.radius + 1} taps, got {taps.shape}"
            )
        taps.flags.writeable = False
        object.__setattr__(self, "taps", taps)


def make_kernel(sigma: float, order: int) -> DerivativeKernel1D:
    """Sample the 1D Gaussian (or its 1st/2nd derivative) at integer offsets.

    Radius is ceil(4*sigma), which keeps the truncated tail mass below 1e-4
    per axis. Order 0 is rescaled to unit sum; orders 1 and 2 are corrected
    to exact zero sum (order 1 by dropping any symmetric sampling residue,
    order 2 by subtracting the tap mean), so that derivative kernels
    annihilate constant signals even at small sigma.
    """
    if sigma <= 0:
        raise ParameterError(f"sigma must be > 0, got {sigma}")
    if order not in (0, 1, 2):
        raise ParameterError(f"derivative order must be 0, 1, or 2, got {order}")
    radius = math.ceil(4.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    gauss = np.exp(-(x * x) / (2.0 * sigma * sigma)) / (sigma * math.sqrt(2.0 * math.pi))
    if order == 0:
        taps = gauss / gauss.sum()
    elif order == 1:
        taps = -x / (sigma * sigma) * gauss
        taps = 0.5 * (taps - taps[::-1])  # keep only the antisymmetric part
    else:
        taps = (x * x / sigma**4 - 1.0 / (sigma * sigma)) * gauss
        taps = taps - taps.mean()
    return DerivativeKernel1D(order=order, radius=radius, taps=taps)


def normalize_scales(scales: Sequence[float]) -> tuple[float, ...]:
    """Validate a scale set: positive, distinct; returned strictly increasing."""
    values = tuple(float(s) for s in scales)
    if not values:
        raise ParameterError("scale set must be non-empty")
    if any(s <= 0 for s in values):
        raise ParameterError(f"scales must be > 0, got {values}")
    ordered = tuple(sorted(values))
    if any(a == b for a, b in zip(ordered, ordered[1:])):
        raise ParameterError(f"scales must be distinct, got {values}")
    return ordered


def _axis_orders(i: int, j: int) -> tuple[int, int, int]:
    """Derivative order along each of the three axes for entry (i, j)."""
    if i not in (0, 1, 2) or j not in (0, 1, 2):
        raise ParameterError(f"axes must be in {{0,1,2}}, got ({i}, {j})")
    orders = [0, 0, 0]
    if i == j:
        orders[i] = 2
    else:
        orders[i] = 1
        orders[j] = 1
    return tuple(orders)


def hessian_entry(vol: GrayVolume, i: int, j: int, sigma: float) -> np.ndarray:
    """One Hessian-of-Gaussian entry, sigma * (I * d2G/dpi dpj), as a float field.

    Axes are 0-based (0=x, 1=y, 2=z). Mirror boundary handling throughout.
    """
    orders = _axis_orders(i, j)
    field = np.asarray(vol.data, dtype=np.float64)
    for axis, order in enumerate(orders):
        kernel = make_kernel(sigma, order)
        field = convolve1d(field, kernel.taps, axis=axis, mode="mirror")
    return sigma * field


def max_entry_response(vol: GrayVolume, sigma: float) -> np.ndarray:
    """Voxelwise maximum over the six distinct Hessian entries and 0."""
    response = None
    for i, j in HESSIAN_PAIRS:
        entry = hessian_entry(vol, i, j, sigma)
        response = entry if response is None else np.maximum(response, entry)
    np.maximum(response, 0.0, out=response)
    return response


def binarize_scale(field: np.ndarray) -> BinaryVolume:
    """Threshold a response field at mean + 3 * sample sd (ddof=1).

    Comparison is >=; if the sd is zero (or undefined for a single voxel)
    the output is all zeros.
    """
    field = np.asarray(field, dtype=np.float64)
    if field.size < 2:
        return BinaryVolume(np.zeros(field.shape, dtype=np.uint8))
    mu = float(field.mean())
    sd = float(field.std(ddof=1))
    if sd == 0.0:
        return BinaryVolume(np.zeros(field.shape, dtype=np.uint8))
    return BinaryVolume((field >= mu + 3.0 * sd).astype(np.uint8))


def multiscale_filter(vol: GrayVolume, scales: Sequence[float], threads: int = 1) -> BinaryVolume:
    """Voxelwise OR of the per-scale binarizations over the given scale set.

    Output is independent of ``threads``; scales are combined in increasing
    order and each per-scale pipeline is self-contained.
    """
    ordered = normalize_scales(scales)

    def one_scale(sigma: float) -> np.ndarray:
        return binarize_scale(max_entry_response(vol, sigma)).data

    if threads > 1 and len(ordered) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            masks = list(pool.map(one_scale, ordered))
    else:
        masks = [one_scale(s) for s in ordered]

    combined = masks[0]
    for mask in masks[1:]:
        combined = np.maximum(combined, mask)
    return BinaryVolume(combined)
