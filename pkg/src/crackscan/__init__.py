"""Crack pre-detection for 3D CT volumes.

Two phases: a multiscale Hessian-entry filter binarizes the gray volume,
then each cubic subregion is classified from the DFS components of a
reduced lattice graph built over its busiest facet. A mesh-size bound ties
the lattice spacing to a target probability of missing a crack, and a
synthetic scene generator provides seeded volumes with exact ground truth.
"""

from .classify import CrackGeometry, RegionLabel, classify, default_tau, delta_max, simulate_miss_probability
from .errors import (
    CrackscanError,
    DomainError,
    FormatError,
    InfeasibleMeshError,
    ParameterError,
    PartitionError,
    SizeError,
)
from .hessian import binarize_scale, hessian_entry, make_kernel, max_entry_response, multiscale_filter
from .lattice import Component, SurfaceLatticeGraph, build_graph, connected_components, graph_text
from .metrics import ConfusionCounts, Metrics, confusion, metrics
from .partition import SubregionSpec, partition_domain, select_facet
from .pipeline import DetectionRun, RegionReport, detect_regions, report_csv
from .synth import CrackSpec, GroundTruth, PoreProcess, SceneConfig, generate, parse_scene_config, region_truth
from .volume import (
    FACETS,
    BinaryVolume,
    Box,
    FacetSlice,
    GrayVolume,
    VolumeHeader,
    extract_facet,
    read_volume,
    write_pgm,
    write_volume,
)

__version__ = "0.1.0"
