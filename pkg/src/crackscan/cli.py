"""Command-line pipeline: gen, segment, detect, eval, render, bench.

Data goes to files (or stdout for CSV reports); human-facing progress,
timings, and warnings go to stderr, so report bytes depend only on inputs
and flags. Every source of randomness is seeded; unseeded runs use a fixed
default seed rather than entropy.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import synth
from .classify import CrackGeometry, delta_max
from .errors import CrackscanError, DomainError, ParameterError
from .hessian import multiscale_filter, normalize_scales
from .metrics import confusion, metrics
from .partition import partition_domain
from .pipeline import detect_regions, parse_report_csv, report_csv, report_labels
from .volume import BinaryVolume, GrayVolume, gray_to_byte, read_volume, write_pgm, write_volume

DEFAULT_SCALES = "1,3,5,10"
DEFAULT_SEED = 0


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_scales(text: str) -> tuple[float, ...]:
    try:
        parts = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ParameterError(f"--scales must be a comma-separated list of numbers, got {text!r}")
    return normalize_scales(parts)


def cmd_gen(args) -> int:
    config = synth.parse_scene_config(args.config)
    if args.seed is not None:
        config = synth.SceneConfig(
            dims=config.dims, material=config.material, noise_sd=config.noise_sd,
            cracks=config.cracks, pores=config.pores, seed=args.seed,
        )
    t0 = time.perf_counter()
    volume, truth = synth.generate(config)
    _log(f"gen: {config.dims} volume in {time.perf_counter() - t0:.2f} s")
    write_volume(volume, args.out_prefix)
    write_volume(truth.mask, args.out_prefix + "-mask")
    with open(args.out_prefix + "-scene.txt", "w", encoding="ascii", newline="\n") as fh:
        fh.write(synth.scene_config_text(config))
    _log(f"gen: wrote {args.out_prefix}.raw/.meta, {args.out_prefix}-mask.raw/.meta")
    return 0


def cmd_segment(args) -> int:
    scales = _parse_scales(args.scales)
    vol = read_volume(args.input)
    if not isinstance(vol, GrayVolume):
        raise ParameterError(f"{args.input}: segmentation needs a grayscale volume, got bit kind")
    from .hessian import binarize_scale, max_entry_response

    masks = []
    for sigma in scales:
        t0 = time.perf_counter()
        masks.append(binarize_scale(max_entry_response(vol, sigma)).data)
        _log(f"segment: scale {sigma:g} in {(time.perf_counter() - t0) * 1e3:.1f} ms")
    combined = masks[0]
    for mask in masks[1:]:
        combined = np.maximum(combined, mask)
    out = BinaryVolume(combined)
    write_volume(out, args.output)
    _log(f"segment: {out.foreground_count} foreground voxels -> {args.output}.raw")
    return 0


def cmd_detect(args) -> int:
    vol = read_volume(args.input)
    if not isinstance(vol, BinaryVolume):
        raise ParameterError(f"{args.input}: detection needs a binary volume (bit kind)")

    if args.alpha is not None:
        if args.area is None:
            raise ParameterError("--alpha needs --area (crack cross-section area in pixels)")
        geom = CrackGeometry(length=args.area, width=1.0, epsilon=args.epsilon, alpha=args.alpha)
        feasible = delta_max(geom)
        if args.delta > feasible:
            _log(
                f"warning: Δ exceeds Δ_max={feasible} for alpha={args.alpha}, "
                f"area={args.area}, epsilon={args.epsilon}"
            )

    t0 = time.perf_counter()
    run = detect_regions(
        vol, g=args.g, delta=args.delta, tau=args.tau, threads=args.threads,
        boundary_rule_first=not args.unconditional_crack_rule,
        include_foreground=args.include_foreground, crop=args.crop,
    )
    elapsed = time.perf_counter() - t0
    text = report_csv(run, include_timings=args.timings)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    counts = run.label_counts()
    if run.cropped_from is not None:
        _log(f"detect: cropped {run.cropped_from} -> {run.dims}")
    _log(
        f"detect: {len(run.reports)} regions (side {run.side}) "
        f"H={counts['H']} I={counts['I']} C={counts['C']} tau={run.tau:g} in {elapsed:.2f} s"
    )
    return 0


def cmd_eval(args) -> int:
    meta, rows = parse_report_csv(args.report)
    pred = report_labels(rows)
    mask = read_volume(args.mask)
    if not isinstance(mask, BinaryVolume):
        raise ParameterError(f"{args.mask}: ground truth must be a binary volume")
    specs = partition_domain(mask.dims, args.g)
    if len(specs) != len(pred):
        raise ParameterError(
            f"report has {len(pred)} regions but mask with g={args.g} gives {len(specs)}"
        )
    truth = synth.region_truth(synth.GroundTruth(mask=mask), specs)
    result = metrics(confusion(pred, truth))
    image = os.path.splitext(os.path.basename(args.mask))[0]
    delta = meta.get("delta", "")
    line = (
        f"image,delta,g,precision,recall,f1\n"
        f"{image},{delta},{args.g},{result.precision:.7f},{result.recall:.7f},{result.f1:.7f}\n"
    )
    if args.out is None:
        sys.stdout.write(line)
    else:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(line)
    return 0


def cmd_render(args) -> int:
    vol = read_volume(args.input)
    axis = "xyz".index(args.axis)
    if not 0 <= args.index < vol.dims[axis]:
        raise DomainError(
            f"index {args.index} out of range for axis {args.axis} with dims {vol.dims}"
        )
    plane = np.take(vol.data, args.index, axis=axis)
    if isinstance(vol, BinaryVolume):
        image = plane * np.uint8(255)
    else:
        image = gray_to_byte(plane)
    write_pgm(image, args.out)
    _log(f"render: {image.shape[0]}x{image.shape[1]} -> {args.out}")
    return 0


def _bench_scene(side: int, seed: int) -> synth.SceneConfig:
    return synth.SceneConfig(
        dims=(side, side, side),
        material=0.55,
        noise_sd=0.05,
        cracks=(
            synth.CrackSpec(
                normal=(1.0, 0.22, 0.13), offset=0.62 * side, width=3.0, level=0.08
            ),
        ),
        pores=synth.PoreProcess(intensity=1.0e-5, r_min=2.0, r_max=5.0, level=0.12),
        seed=seed,
    )


def run_bench(sides, scales, g, delta, seed, threads=1):
    """Generate, segment, and detect at each side; returns timing rows."""
    rows = []
    for side in sides:
        config = _bench_scene(side, seed)
        volume, _ = synth.generate(config)
        t0 = time.perf_counter()
        binary = multiscale_filter(volume, scales, threads=threads)
        t1 = time.perf_counter()
        detect_regions(binary, g=g, delta=delta, threads=threads)
        t2 = time.perf_counter()
        voxels = side**3
        rows.append(
            {
                "side": side,
                "voxels": voxels,
                "segment_s": t1 - t0,
                "detect_s": t2 - t1,
                "total_s": t2 - t0,
                "s_per_voxel": (t2 - t0) / voxels,
            }
        )
    return rows


def cmd_bench(args, parser: argparse.ArgumentParser) -> int:
    try:
        sides = [int(s) for s in args.sides.split(",") if s.strip()]
    except ValueError:
        parser.error(f"--sides must be a comma-separated list of integers, got {args.sides!r}")
    if not sides:
        parser.error("--sides must name at least one side")
    for side in sides:
        if side % args.g != 0:
            parser.error(f"side {side} is not divisible by g={args.g}")
    scales = _parse_scales(args.scales)
    rows = run_bench(sides, scales, g=args.g, delta=args.delta, seed=args.seed, threads=args.threads)
    print(f"{'side':>6} {'voxels':>12} {'segment_s':>10} {'detect_s':>10} {'total_s':>10} {'s_per_voxel':>12}")
    for row in rows:
        print(
            f"{row['side']:>6} {row['voxels']:>12} {row['segment_s']:>10.3f} "
            f"{row['detect_s']:>10.3f} {row['total_s']:>10.3f} {row['s_per_voxel']:>12.3e}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crackscan",
        description="Crack pre-detection in 3D CT volumes: Hessian-entry binarization "
        "followed by DFS over reduced surface lattice graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic volume + ground-truth mask from a scene file")
    p.add_argument("config", help="scene config file (flat key-value text)")
    p.add_argument("out_prefix", help="output prefix; writes PREFIX.raw/.meta and PREFIX-mask.*")
    p.add_argument("--seed", type=int, default=None, help="override the scene seed")

    p = sub.add_parser("segment", help="binarize a grayscale volume with the multiscale Hessian filter")
    p.add_argument("input", help="grayscale volume (u8/u16/f32 kind)")
    p.add_argument("output", help="output binary volume prefix")
    p.add_argument("--scales", default=DEFAULT_SCALES, help=f"comma-separated sigmas (default {DEFAULT_SCALES})")

    p = sub.add_parser("detect", help="classify g^3 subregions of a binary volume")
    p.add_argument("input", help="binary volume (bit kind)")
    p.add_argument("--g", type=int, required=True, help="partition factor per axis")
    p.add_argument("--delta", type=int, required=True, help="lattice mesh size in pixels")
    p.add_argument("--tau", type=float, default=None, help="component-size threshold (default side/delta + 1)")
    p.add_argument("--alpha", type=float, default=None, help="miss-probability level for the mesh feasibility check")
    p.add_argument("--area", type=float, default=None, help="crack cross-section area for the feasibility check")
    p.add_argument("--epsilon", type=float, default=0.1, help="slack factor in the miss bound (default 0.1)")
    p.add_argument("--out", default=None, help="report CSV path (default stdout)")
    p.add_argument("--threads", type=int, default=1, help="worker threads; output is identical for any value")
    p.add_argument("--crop", action="store_true", help="trim to the largest cube divisible by g instead of failing")
    p.add_argument("--timings", action="store_true", help="add per-stage wall-time columns to the CSV")
    p.add_argument("--include-foreground", action="store_true",
                   help="keep foreground lattice vertices in the graph (sensitivity mode)")
    p.add_argument("--unconditional-crack-rule", action="store_true",
                   help="apply the component-size rule even to interior-only regions")

    p = sub.add_parser("eval", help="score a detect report against a ground-truth mask")
    p.add_argument("report", help="report CSV from detect")
    p.add_argument("mask", help="ground-truth binary volume")
    p.add_argument("--g", type=int, required=True, help="partition factor used for the report")
    p.add_argument("--out", default=None, help="metrics CSV path (default stdout)")

    p = sub.add_parser("render", help="export one volume slice as a binary PGM")
    p.add_argument("input", help="volume to slice")
    p.add_argument("out", help="output .pgm path")
    p.add_argument("--axis", choices=("x", "y", "z"), default="z")
    p.add_argument("--index", type=int, required=True)

    p = sub.add_parser("bench", help="time segment+detect on synthetic volumes of growing size")
    p.add_argument("--sides", required=True, help="comma-separated cube sides, e.g. 64,128")
    p.add_argument("--scales", default=DEFAULT_SCALES)
    p.add_argument("--g", type=int, default=4)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "segment":
            return cmd_segment(args)
        if args.command == "detect":
            return cmd_detect(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "render":
            return cmd_render(args)
        if args.command == "bench":
            return cmd_bench(args, parser)
        parser.error(f"unknown command {args.command!r}")
    except CrackscanError as exc:
        _log(f"error: {exc}")
        return 1
    except OSError as exc:
        _log(f"error: {exc}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
