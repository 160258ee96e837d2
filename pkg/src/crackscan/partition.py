"""Tiling of a cubic volume into g^3 equal subcubes and per-subregion facet choice."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PartitionError
from .volume import FACETS, BinaryVolume, Box, FacetSlice, extract_facet

__all__ = ["SubregionSpec", "partition_domain", "select_facet", "largest_divisible_side"]


@dataclass(frozen=True)
class SubregionSpec:
    """One tile of the partition: 1-based index triple q and its voxel box."""

    q: tuple[int, int, int]
    box: Box

    @property
    def side(self) -> int:
        return self.box.side


def partition_domain(dims, g: int) -> list[SubregionSpec]:
    """Split a cubic domain into g^3 subcubes, listed in lexicographic q order.

    Requires a cubic volume whose side is divisible by g; boxes tile the
    domain exactly with pairwise disjoint interiors.
    """
    nx, ny, nz = (int(d) for d in dims)
    if g < 1:
        raise PartitionError(f"g must be >= 1, got {g}")
    if not (nx == ny == nz):
        raise PartitionError(f"volume must be cubic, got dims {(nx, ny, nz)}")
    if nx % g != 0:
        raise PartitionError(f"volume side {nx} is not divisible by g={g}")
    side = nx // g
    specs = []
    for qx in range(1, g + 1):
        for qy in range(1, g + 1):
            for qz in range(1, g + 1):
                origin = ((qx - 1) * side, (qy - 1) * side, (qz - 1) * side)
                specs.append(SubregionSpec(q=(qx, qy, qz), box=Box(origin=origin, side=side)))
    return specs


def largest_divisible_side(dims, g: int) -> int:
    """Side of the largest origin-anchored cube divisible by g (crop helper)."""
    if g < 1:
        raise PartitionError(f"g must be >= 1, got {g}")
    side = (min(int(d) for d in dims) // g) * g
    if side < g:
        raise PartitionError(f"dims {tuple(dims)} leave no room for a g={g} partition")
    return side


def select_facet(vol: BinaryVolume, spec: SubregionSpec) -> FacetSlice:
    """The facet slice of this subregion with the most foreground pixels.

    Ties break on the fixed facet order -x,+x,-y,+y,-z,+z (first maximum wins).
    """
    best: FacetSlice | None = None
    best_count = -1
    for facet in FACETS:
        candidate = extract_facet(vol, spec.box, facet)
        count = candidate.foreground_count
        if count > best_count:
            best, best_count = candidate, count
    return FacetSlice(facet=best.facet, box=best.box, data=best.data, q=spec.q)
