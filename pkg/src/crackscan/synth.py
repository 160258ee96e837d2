"""Seeded synthetic concrete volumes with exact crack ground truth.

A scene is homogeneous material plus Gaussian gray noise, a Boolean pore
process (Poisson number of balls, uniform centers and radii), and planar
crack slabs. Cracks are painted last so they override pores; the ground
truth mask follows the crack geometry exactly, which keeps region-level
labels free of segmentation ambiguity.

Scene files are flat key-value text; see :func:`parse_scene_config`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, ParameterError
from .partition import SubregionSpec
from .volume import BinaryVolume, GrayVolume

__all__ = [
    "CrackSpec",
    "PoreProcess",
    "SceneConfig",
    "GroundTruth",
    "generate",
    "region_truth",
    "parse_scene_config",
    "scene_config_text",
]


@dataclass(frozen=True)
class CrackSpec:
    """Planar slab: voxels p with \\|<p, n> - offset\\| <= width/2 (+ roughness)."""

    normal: tuple[float, float, float]
    offset: float
    width: float
    level: float
    roughness: float = 0.0

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=np.float64)
        norm = float(np.linalg.norm(n))
        if norm == 0.0:
            raise ParameterError("crack normal must be non-zero")
        object.__setattr__(self, "normal", tuple(float(v) for v in n / norm))
        if self.width <= 0:
            raise ParameterError(f"crack width must be > 0, got {self.width}")
        if not 0.0 <= self.level <= 1.0:
            raise ParameterError(f"crack gray level must lie in [0, 1], got {self.level}")
        if self.roughness < 0 or self.roughness > self.width:
            raise ParameterError(
                f"roughness amplitude must lie in [0, width], got {self.roughness}"
            )


@dataclass(frozen=True)
class PoreProcess:
    """Boolean model: Poisson(intensity * #voxels) balls, uniform centers/radii."""

    intensity: float
    r_min: float
    r_max: float
    level: float

    def __post_init__(self):
        if self.intensity < 0:
            raise ParameterError(f"pore intensity must be >= 0, got {self.intensity}")
        if not 0.0 < self.r_min <= self.r_max:
            raise ParameterError(f"pore radii need 0 < r_min <= r_max, got [{self.r_min}, {self.r_max}]")
        if not 0.0 <= self.level <= 1.0:
            raise ParameterError(f"pore gray level must lie in [0, 1], got {self.level}")


@dataclass(frozen=True)
class SceneConfig:
    dims: tuple[int, int, int]
    material: float
    noise_sd: float = 0.0
    cracks: tuple[CrackSpec, ...] = field(default_factory=tuple)
    pores: PoreProcess | None = None
    seed: int = 0

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3 or any(d < 1 for d in dims):
            raise ParameterError(f"dims must be three integers >= 1, got {self.dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "cracks", tuple(self.cracks))
        if not 0.0 < self.material < 1.0:
            raise ParameterError(f"material gray level must lie in (0, 1), got {self.material}")
        if self.noise_sd < 0:
            raise ParameterError(f"noise sd must be >= 0, got {self.noise_sd}")
        for crack in self.cracks:
            if crack.level >= self.material:
                raise ParameterError(
                    f"crack level {crack.level} must be darker than material {self.material}"
                )
        if self.pores is not None and self.pores.level >= self.material:
            raise ParameterError(
                f"pore level {self.pores.level} must be darker than material {self.material}"
            )

    @property
    def voxel_count(self) -> int:
        nx, ny, nz = self.dims
        return nx * ny * nz


@dataclass(frozen=True)
class GroundTruth:
    """Exact crack mask (1 = crack voxel), same dims as the generated volume.

    ``pore_count`` records the realized Poisson draw for auditability.
    """

    mask: BinaryVolume
    pore_count: int = 0


def _plane_basis(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal in-plane basis for the roughness perturbation."""
    n = np.asarray(normal, dtype=np.float64)
    helper = np.array([0.0, 0.0, 1.0]) if abs(n[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return e1, e2


def generate(config: SceneConfig) -> tuple[GrayVolume, GroundTruth]:
    """Render a scene; fully determined by ``config.seed``.

    Draw order is fixed (noise, pore count, centers, radii, roughness
    phases) so identical configs give bit-identical volumes.
    """
    rng = np.random.default_rng(config.seed)
    nx, ny, nz = config.dims
    vol = np.full(config.dims, config.material, dtype=np.float64)
    if config.noise_sd > 0:
        vol += rng.normal(0.0, config.noise_sd, config.dims)

    pore_count = 0
    if config.pores is not None and config.pores.intensity > 0:
        pores = config.pores
        count = int(rng.poisson(pores.intensity * config.voxel_count))
        pore_count = count
        centers = rng.uniform([0.0, 0.0, 0.0], [nx, ny, nz], (count, 3))
        radii = rng.uniform(pores.r_min, pores.r_max, count)
        for (cx, cy, cz), r in zip(centers, radii):
            x0, x1 = max(0, math.ceil(cx - r)), min(nx - 1, math.floor(cx + r))
            y0, y1 = max(0, math.ceil(cy - r)), min(ny - 1, math.floor(cy + r))
            z0, z1 = max(0, math.ceil(cz - r)), min(nz - 1, math.floor(cz + r))
            if x0 > x1 or y0 > y1 or z0 > z1:
                continue
            gx = np.arange(x0, x1 + 1, dtype=np.float64)[:, None, None] - cx
            gy = np.arange(y0, y1 + 1, dtype=np.float64)[None, :, None] - cy
            gz = np.arange(z0, z1 + 1, dtype=np.float64)[None, None, :] - cz
            ball = gx * gx + gy * gy + gz * gz <= r * r
            region = vol[x0 : x1 + 1, y0 : y1 + 1, z0 : z1 + 1]
            region[ball] = pores.level

    mask = np.zeros(config.dims, dtype=np.uint8)
    if config.cracks:
        gx = np.arange(nx, dtype=np.float64)[:, None, None]
        gy = np.arange(ny, dtype=np.float64)[None, :, None]
        gz = np.arange(nz, dtype=np.float64)[None, None, :]
        wavelength = max(config.dims) / 2.0
        for crack in config.cracks:
            n = np.asarray(crack.normal)
            signed = gx * n[0] + gy * n[1] + gz * n[2] - crack.offset
            if crack.roughness > 0:
                e1, e2 = _plane_basis(n)
                phase1, phase2 = rng.uniform(0.0, 2.0 * math.pi, 2)
                u = gx * e1[0] + gy * e1[1] + gz * e1[2]
                v = gx * e2[0] + gy * e2[1] + gz * e2[2]
                signed = signed - crack.roughness * np.sin(
                    2.0 * math.pi * u / wavelength + phase1
                ) * np.sin(2.0 * math.pi * v / wavelength + phase2)
            slab = np.abs(signed) <= crack.width / 2.0
            vol[slab] = crack.level
            mask[slab] = 1

    np.clip(vol, 0.0, 1.0, out=vol)
    return GrayVolume(vol), GroundTruth(mask=BinaryVolume(mask), pore_count=pore_count)


def region_truth(truth: GroundTruth, partition: list[SubregionSpec]) -> list[bool]:
    """Per-region crack labels: true iff the mask has any voxel in the region box."""
    mask = truth.mask.data
    return [bool(mask[spec.box.slices()].any()) for spec in partition]


# -- scene file format --------------------------------------------------------
#
#   dims = 250 250 250        (a single value means a cube)
#   material = 0.55
#   noise_sd = 0.05
#   seed = 7
#   pore_intensity = 1.28e-5  (expected pores per voxel)
#   pore_radius = 3 6
#   pore_level = 0.12
#   crack = 1 0.2 0.1  125  3  0.08  [roughness]
#           nx ny nz  offset width level
#
# '#' starts a comment; 'crack' may repeat.


def parse_scene_config(source: str | os.PathLike, *, is_text: bool = False) -> SceneConfig:
    """Parse a scene file (or literal text with ``is_text=True``).

    Errors carry the 1-based line number of the offending entry.
    """
    if is_text:
        text = str(source)
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()

    fields: dict[str, tuple[int, str]] = {}
    crack_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "crack":
            crack_lines.append((lineno, value))
        elif key in fields:
            raise FormatError(f"line {lineno}: duplicate key {key!r}")
        else:
            fields[key] = (lineno, value)

    def take(key: str, default: str | None = None) -> tuple[int, str]:
        if key in fields:
            return fields.pop(key)
        if default is None:
            raise FormatError(f"scene config is missing required key {key!r}")
        return (0, default)

    def parse_floats(lineno: int, key: str, value: str, count: int | None) -> list[float]:
        parts = value.split()
        if count is not None and len(parts) != count:
            raise FormatError(f"line {lineno}: key {key!r} needs {count} values, got {len(parts)}")
        try:
            return [float(p) for p in parts]
        except ValueError:
            raise FormatError(f"line {lineno}: key {key!r} has a non-numeric value {value!r}")

    lineno, value = take("dims")
    dim_vals = parse_floats(lineno, "dims", value, None)
    if len(dim_vals) == 1:
        dims = (int(dim_vals[0]),) * 3
    elif len(dim_vals) == 3:
        dims = tuple(int(v) for v in dim_vals)
    else:
        raise FormatError(f"line {lineno}: 'dims' needs 1 or 3 values, got {len(dim_vals)}")

    lineno, value = take("material")
    material = parse_floats(lineno, "material", value, 1)[0]
    lineno, value = take("noise_sd", "0")
    noise_sd = parse_floats(lineno, "noise_sd", value, 1)[0]
    lineno, value = take("seed", "0")
    try:
        seed = int(value)
    except ValueError:
        raise FormatError(f"line {lineno}: 'seed' must be an integer, got {value!r}")

    pores = None
    if "pore_intensity" in fields:
        lineno, value = take("pore_intensity")
        intensity = parse_floats(lineno, "pore_intensity", value, 1)[0]
        lineno, value = take("pore_radius")
        r_min, r_max = parse_floats(lineno, "pore_radius", value, 2)
        lineno, value = take("pore_level")
        level = parse_floats(lineno, "pore_level", value, 1)[0]
        pores = PoreProcess(intensity=intensity, r_min=r_min, r_max=r_max, level=level)
    elif "pore_radius" in fields or "pore_level" in fields:
        key = "pore_radius" if "pore_radius" in fields else "pore_level"
        raise FormatError(f"line {fields[key][0]}: {key!r} given without 'pore_intensity'")

    cracks = []
    for lineno, value in crack_lines:
        parts = parse_floats(lineno, "crack", value, None)
        if len(parts) not in (6, 7):
            raise FormatError(
                f"line {lineno}: 'crack' needs 6 or 7 values (nx ny nz offset width level "
                f"[roughness]), got {len(parts)}"
            )
        cracks.append(
            CrackSpec(
                normal=tuple(parts[0:3]),
                offset=parts[3],
                width=parts[4],
                level=parts[5],
                roughness=parts[6] if len(parts) == 7 else 0.0,
            )
        )

    if fields:
        key = next(iter(fields))
        raise FormatError(f"line {fields[key][0]}: unknown key {key!r}")

    try:
        return SceneConfig(
            dims=dims, material=material, noise_sd=noise_sd, cracks=tuple(cracks),
            pores=pores, seed=seed,
        )
    except ParameterError as exc:
        raise FormatError(f"invalid scene config: {exc}") from exc


def scene_config_text(config: SceneConfig) -> str:
    """Canonical text form of a scene (the echo written next to generated data)."""
    nx, ny, nz = config.dims
    lines = [
        f"dims = {nx} {ny} {nz}",
        f"material = {config.material!r}",
        f"noise_sd = {config.noise_sd!r}",
        f"seed = {config.seed}",
    ]
    if config.pores is not None:
        lines.append(f"pore_intensity = {config.pores.intensity!r}")
        lines.append(f"pore_radius = {config.pores.r_min!r} {config.pores.r_max!r}")
        lines.append(f"pore_level = {config.pores.level!r}")
    for crack in config.cracks:
        n = " ".join(repr(c) for c in crack.normal)
        lines.append(
            f"crack = {n} {crack.offset!r} {crack.width!r} {crack.level!r} {crack.roughness!r}"
        )
    return "\n".join(lines) + "\n"
