"""3D/2D raster types, indexing, facet extraction, and the raw+sidecar file format.

Conventions fixed here and relied on everywhere else:

* A volume with dims ``(nx, ny, nz)`` is a numpy array of shape ``(nx, ny, nz)``
  indexed ``data[x, y, z]``. On disk the payload is stored x-fastest, i.e.
  linear index ``x + nx*(y + ny*z)`` (Fortran flattening of that array).
* Gray values live in [0, 1]. Integer payloads are normalized by the type
  maximum (255 or 65535), never by per-image min/max.
* The six facets of an axis-aligned cube are named ``-x,+x,-y,+y,-z,+z``;
  that ordering is also the tie-break order used downstream.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FormatError, ParameterError, SizeError

__all__ = [
    "FACETS",
    "GrayVolume",
    "BinaryVolume",
    "VolumeHeader",
    "Box",
    "FacetSlice",
    "read_volume",
    "write_volume",
    "extract_facet",
    "gray_to_byte",
    "write_pgm",
    "pgm_bytes",
]

FACETS = ("-x", "+x", "-y", "+y", "-z", "+z")

# value kind -> (numpy dtype, bytes per voxel); bit is handled separately
_KINDS = {"u8": np.dtype("<u1"), "u16": np.dtype("<u2"), "f32": np.dtype("<f4")}


def _as_dims(dims) -> tuple[int, int, int]:
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3 or any(d < 1 for d in dims):
        raise FormatError(f"dims must be three integers >= 1, got {dims}")
    return dims


@dataclass(frozen=True)
class GrayVolume:
    """3D scalar field of gray values in [0, 1], indexed ``data[x, y, z]``."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3 or arr.size == 0:
            raise FormatError(f"gray volume needs a non-empty 3D array, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.floating):
            arr = arr.astype(np.float64)
        lo, hi = float(arr.min()), float(arr.max())
        if lo < 0.0 or hi > 1.0:
            raise ParameterError(f"gray values must lie in [0, 1], found range [{lo}, {hi}]")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape

    @property
    def voxel_count(self) -> int:
        return self.data.size


@dataclass(frozen=True)
class BinaryVolume:
    """3D {0,1} field, same indexing conventions as :class:`GrayVolume`."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3 or arr.size == 0:
            raise FormatError(f"binary volume needs a non-empty 3D array, got shape {arr.shape}")
        arr = arr.astype(np.uint8, copy=True) if arr.dtype != np.uint8 else np.array(arr, copy=True)
        if arr.size and arr.max() > 1:
            raise ParameterError("binary volume values must be 0 or 1")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape

    @property
    def voxel_count(self) -> int:
        return self.data.size

    @property
    def foreground_count(self) -> int:
        return int(self.data.sum())


@dataclass(frozen=True)
class VolumeHeader:
    """Sidecar metadata: dims, value kind, and (always little-endian) order."""

    dims: tuple[int, int, int]
    kind: str  # one of u8 | u16 | f32 | bit

    def __post_init__(self):
        object.__setattr__(self, "dims", _as_dims(self.dims))
        if self.kind not in ("u8", "u16", "f32", "bit"):
            raise FormatError(f"kind must be one of u8|u16|f32|bit, got {self.kind!r}")

    @property
    def voxel_count(self) -> int:
        nx, ny, nz = self.dims
        return nx * ny * nz

    @property
    def payload_bytes(self) -> int:
        n = self.voxel_count
        if self.kind == "bit":
            return (n + 7) // 8
        return n * _KINDS[self.kind].itemsize

    def to_text(self) -> str:
        nx, ny, nz = self.dims
        return f"dims={nx} {ny} {nz}\nkind={self.kind}\norder=x-fastest\n"

    @classmethod
    def from_text(cls, text: str) -> "VolumeHeader":
        fields = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise FormatError(f"sidecar line without '=': {line!r}")
            key, value = line.split("=", 1)
            fields[key.strip()] = value.strip()
        if "dims" not in fields:
            raise FormatError("sidecar is missing field 'dims'")
        if "kind" not in fields:
            raise FormatError("sidecar is missing field 'kind'")
        try:
            dims = _as_dims(fields["dims"].split())
        except (ValueError, FormatError):
            raise FormatError(f"field 'dims' must be three integers >= 1, got {fields['dims']!r}")
        order = fields.get("order", "x-fastest")
        if order != "x-fastest":
            raise FormatError(f"field 'order' must be 'x-fastest', got {order!r}")
        return cls(dims=dims, kind=fields["kind"])


def _paths_for(path: str | os.PathLike) -> tuple[str, str]:
    """Map a volume path (prefix, .raw, or .meta) to its (.raw, .meta) pair."""
    path = os.fspath(path)
    base, ext = os.path.splitext(path)
    if ext in (".raw", ".meta"):
        return base + ".raw", base + ".meta"
    return path + ".raw", path + ".meta"


def read_volume(path: str | os.PathLike) -> GrayVolume | BinaryVolume:
    """Read a raw+sidecar volume; integer kinds normalize to [0, 1], bit -> BinaryVolume."""
    raw_path, meta_path = _paths_for(path)
    if not os.path.exists(meta_path):
        raise FormatError(f"missing sidecar file {meta_path}")
    with open(meta_path, "r", encoding="ascii") as fh:
        header = VolumeHeader.from_text(fh.read())
    if not os.path.exists(raw_path):
        raise FormatError(f"missing payload file {raw_path}")
    payload = np.fromfile(raw_path, dtype=np.uint8)
    if payload.size != header.payload_bytes:
        raise SizeError(
            f"{raw_path}: payload is {payload.size} bytes but dims "
            f"{header.dims} with kind {header.kind} require {header.payload_bytes}"
        )
    n = header.voxel_count
    if header.kind == "bit":
        flat = np.unpackbits(payload, count=n, bitorder="little")
        return BinaryVolume(flat.reshape(header.dims, order="F"))
    arr = payload.view(_KINDS[header.kind]).reshape(header.dims, order="F")
    if header.kind == "u8":
        return GrayVolume(arr.astype(np.float32) / 255.0)
    if header.kind == "u16":
        return GrayVolume(arr.astype(np.float32) / 65535.0)
    return GrayVolume(arr)  # f32, stored values are already in [0, 1]


def write_volume(vol: GrayVolume | BinaryVolume, path: str | os.PathLike, kind: str | None = None) -> None:
    """Write ``vol`` as raw payload + sidecar.

    Defaults keep round-trips lossless: BinaryVolume -> bit, GrayVolume -> f32.
    Explicit u8/u16 quantize gray values by round-half-up to the type maximum.
    """
    raw_path, meta_path = _paths_for(path)
    if kind is None:
        kind = "bit" if isinstance(vol, BinaryVolume) else "f32"
    if isinstance(vol, BinaryVolume) and kind != "bit":
        raise ParameterError(f"binary volumes are written with kind 'bit', got {kind!r}")
    if isinstance(vol, GrayVolume) and kind == "bit":
        raise ParameterError("gray volumes cannot be written with kind 'bit'")
    header = VolumeHeader(dims=vol.dims, kind=kind)

    if kind == "bit":
        payload = np.packbits(vol.data.flatten(order="F"), bitorder="little")
    else:
        flat = vol.data.flatten(order="F")
        if kind == "f32":
            payload = flat.astype("<f4")
        elif kind == "u8":
            payload = np.floor(flat * 255.0 + 0.5).astype("<u1")
        else:  # u16
            payload = np.floor(flat * 65535.0 + 0.5).astype("<u2")

    try:
        with open(meta_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(header.to_text())
        payload.tofile(raw_path)
    except OSError as exc:
        raise OSError(f"cannot write volume to {raw_path}: {exc}") from exc


# -- facet extraction ---------------------------------------------------------


@dataclass(frozen=True)
class Box:
    """Axis-aligned cube [x0, x0+side-1] x [y0, ...] x [z0, ...] in voxel coords."""

    origin: tuple[int, int, int]
    side: int

    def __post_init__(self):
        object.__setattr__(self, "origin", tuple(int(v) for v in self.origin))
        if self.side < 1:
            raise ParameterError(f"box side must be >= 1, got {self.side}")

    @property
    def upper(self) -> tuple[int, int, int]:
        return tuple(o + self.side - 1 for o in self.origin)

    def slices(self) -> tuple[slice, slice, slice]:
        return tuple(slice(o, o + self.side) for o in self.origin)


@dataclass(frozen=True)
class FacetSlice:
    """2D binary image on one face of a box, with its mapping back to 3D.

    ``data[u, v]`` walks the two free axes of the facet in ascending axis
    order (u over the lower-index axis). ``q`` is filled in by the partition
    layer; facets extracted directly from a box carry ``q=None``.
    """

    facet: str
    box: Box
    data: np.ndarray
    q: tuple[int, int, int] | None = field(default=None)

    def __post_init__(self):
        if self.facet not in FACETS:
            raise ParameterError(f"facet must be one of {FACETS}, got {self.facet!r}")
        arr = np.ascontiguousarray(np.asarray(self.data, dtype=np.uint8))
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def dims(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def foreground_count(self) -> int:
        return int(self.data.sum())

    def volume_coords(self, u: int, v: int) -> tuple[int, int, int]:
        """3D voxel coordinate of slice pixel (u, v)."""
        axis = "xyz".index(self.facet[1])
        fixed = self.box.origin[axis] if self.facet[0] == "-" else self.box.upper[axis]
        free = [a for a in range(3) if a != axis]
        coord = [0, 0, 0]
        coord[axis] = fixed
        coord[free[0]] = self.box.origin[free[0]] + u
        coord[free[1]] = self.box.origin[free[1]] + v
        return tuple(coord)


def extract_facet(vol: BinaryVolume, box: Box, facet: str) -> FacetSlice:
    """Extract the 2D binary image on the named face of ``box``."""
    if facet not in FACETS:
        raise ParameterError(f"facet must be one of {FACETS}, got {facet!r}")
    lo, hi = box.origin, box.upper
    for a in range(3):
        if lo[a] < 0 or hi[a] >= vol.dims[a]:
            raise DomainError(f"box {lo}..{hi} exceeds volume dims {vol.dims} on axis {'xyz'[a]}")
    axis = "xyz".index(facet[1])
    fixed = lo[axis] if facet[0] == "-" else hi[axis]
    sl = list(box.slices())
    sl[axis] = fixed
    plane = vol.data[tuple(sl)]  # remaining axes keep ascending order
    return FacetSlice(facet=facet, box=box, data=plane)


# -- PGM export ---------------------------------------------------------------


def gray_to_byte(values: np.ndarray) -> np.ndarray:
    """Map [0,1] gray values to bytes by round-half-up (0.5 -> 128)."""
    return np.floor(np.asarray(values, dtype=np.float64) * 255.0 + 0.5).astype(np.uint8)


def pgm_bytes(image: np.ndarray) -> bytes:
    """Binary PGM encoding of a 2D byte image ``image[u, v]`` (u = column, fast axis)."""
    img = np.asarray(image, dtype=np.uint8)
    if img.ndim != 2:
        raise ParameterError(f"PGM export needs a 2D image, got ndim={img.ndim}")
    w, h = img.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + img.flatten(order="F").tobytes()


def write_pgm(image: np.ndarray, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(image))
