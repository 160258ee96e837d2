import numpy as np
import pytest

from crackscan.errors import FormatError, ParameterError
from crackscan.partition import partition_domain
from crackscan.synth import (
    CrackSpec,
    PoreProcess,
    SceneConfig,
    generate,
    parse_scene_config,
    region_truth,
    scene_config_text,
)


class TestGenerate:
    def test_plain_material_is_constant_with_empty_mask(self):
        cfg = SceneConfig(dims=(16, 16, 16), material=0.6)
        vol, truth = generate(cfg)
        assert np.all(vol.data == 0.6)
        assert truth.mask.foreground_count == 0

    def test_axis_normal_slab_exact_voxel_count(self):
        cfg = SceneConfig(
            dims=(100, 100, 100), material=0.6,
            cracks=(CrackSpec(normal=(1, 0, 0), offset=50.0, width=3.0, level=0.1),),
        )
        _, truth = generate(cfg)
        # |x - 50| <= 1.5 selects x in {49, 50, 51}: three full planes
        assert truth.mask.foreground_count == 3 * 100 * 100
        assert np.all(truth.mask.data[49:52, :, :] == 1)

    def test_same_seed_bit_identical(self):
        cfg = SceneConfig(
            dims=(24, 24, 24), material=0.55, noise_sd=0.05,
            cracks=(CrackSpec(normal=(1, 0.3, 0.2), offset=12.0, width=2.0, level=0.1, roughness=0.5),),
            pores=PoreProcess(intensity=2e-4, r_min=1.5, r_max=3.0, level=0.2),
            seed=123,
        )
        vol_a, truth_a = generate(cfg)
        vol_b, truth_b = generate(cfg)
        assert np.array_equal(vol_a.data, vol_b.data)
        assert np.array_equal(truth_a.mask.data, truth_b.mask.data)

    def test_different_seeds_differ(self):
        base = dict(dims=(16, 16, 16), material=0.5, noise_sd=0.05)
        vol_a, _ = generate(SceneConfig(**base, seed=1))
        vol_b, _ = generate(SceneConfig(**base, seed=2))
        assert not np.array_equal(vol_a.data, vol_b.data)

    def test_crack_paint_overrides_pores(self):
        cfg = SceneConfig(
            dims=(30, 30, 30), material=0.7,
            cracks=(CrackSpec(normal=(1, 0, 0), offset=15.0, width=3.0, level=0.05),),
            pores=PoreProcess(intensity=5e-3, r_min=2.0, r_max=4.0, level=0.3),
            seed=5,
        )
        vol, truth = generate(cfg)
        assert np.all(vol.data[truth.mask.data == 1] == 0.05)

    def test_mask_voxels_carry_crack_level_without_overlap(self):
        cfg = SceneConfig(
            dims=(40, 40, 40), material=0.6, noise_sd=0.0,
            cracks=(CrackSpec(normal=(0, 0, 1), offset=20.0, width=2.0, level=0.1),),
        )
        vol, truth = generate(cfg)
        mask = truth.mask.data.astype(bool)
        assert np.all(vol.data[mask] == 0.1)
        assert np.all(vol.data[~mask] == 0.6)

    def test_pore_count_mean_matches_intensity(self):
        dims = (40, 40, 40)
        intensity = 3.125e-3  # expect 200 pores per volume
        expected = intensity * 40**3
        counts = []
        for seed in range(50):
            cfg = SceneConfig(
                dims=dims, material=0.8, noise_sd=0.0,
                pores=PoreProcess(intensity=intensity, r_min=1.0, r_max=2.0, level=0.2),
                seed=seed,
            )
            _, truth = generate(cfg)
            counts.append(truth.pore_count)
        assert abs(np.mean(counts) - expected) / expected < 0.05

    def test_values_clamped(self):
        cfg = SceneConfig(dims=(12, 12, 12), material=0.9, noise_sd=0.5, seed=3)
        vol, _ = generate(cfg)
        assert vol.data.max() <= 1.0
        assert vol.data.min() >= 0.0

    def test_validation(self):
        with pytest.raises(ParameterError):
            SceneConfig(dims=(10, 10, 10), material=0.5,
                        cracks=(CrackSpec(normal=(1, 0, 0), offset=5, width=1, level=0.6),))
        with pytest.raises(ParameterError):
            SceneConfig(dims=(10, 10, 10), material=1.2)
        with pytest.raises(ParameterError):
            PoreProcess(intensity=1e-4, r_min=3.0, r_max=2.0, level=0.1)
        with pytest.raises(ParameterError):
            CrackSpec(normal=(0, 0, 0), offset=1, width=1, level=0.1)


class TestRegionTruth:
    def test_empty_mask_all_false(self):
        cfg = SceneConfig(dims=(40, 40, 40), material=0.6)
        _, truth = generate(cfg)
        specs = partition_domain((40, 40, 40), 4)
        assert region_truth(truth, specs) == [False] * 64

    def test_plane_marks_exactly_one_q_band(self):
        cfg = SceneConfig(
            dims=(250, 250, 250), material=0.6,
            cracks=(CrackSpec(normal=(1, 0, 0), offset=125.0, width=3.0, level=0.1),),
        )
        _, truth = generate(cfg)
        specs = partition_domain((250, 250, 250), 5)
        labels = region_truth(truth, specs)
        positives = [spec.q for spec, flag in zip(specs, labels) if flag]
        # slab x in {124, 125, 126} lies inside the qx=3 band [100, 149]
        assert len(positives) == 25
        assert all(q[0] == 3 for q in positives)

    def test_full_mask_all_true(self):
        cfg = SceneConfig(
            dims=(20, 20, 20), material=0.6,
            cracks=(CrackSpec(normal=(1, 0, 0), offset=10.0, width=100.0, level=0.1),),
        )
        _, truth = generate(cfg)
        specs = partition_domain((20, 20, 20), 2)
        assert region_truth(truth, specs) == [True] * 8


class TestSceneFile:
    GOOD = """
# demo scene
dims = 40
material = 0.6
noise_sd = 0.02
seed = 9
pore_intensity = 1e-4
pore_radius = 2 4
pore_level = 0.2
crack = 1 0 0 20 3 0.1
crack = 0 1 0 10 2 0.05 0.5
"""

    def test_round_trip_through_text(self):
        cfg = parse_scene_config(self.GOOD, is_text=True)
        assert cfg.dims == (40, 40, 40)
        assert cfg.seed == 9
        assert len(cfg.cracks) == 2
        assert cfg.cracks[1].roughness == 0.5
        again = parse_scene_config(scene_config_text(cfg), is_text=True)
        assert again == cfg

    def test_file_parse(self, tmp_path):
        path = tmp_path / "scene.txt"
        path.write_text(self.GOOD)
        cfg = parse_scene_config(path)
        assert cfg.pores is not None
        assert cfg.pores.r_max == 4.0

    def test_error_carries_line_number(self):
        bad = "dims = 40\nmaterial = 0.6\ncrack = 1 0 0\n"
        with pytest.raises(FormatError, match="line 3"):
            parse_scene_config(bad, is_text=True)

    def test_unknown_key_rejected(self):
        with pytest.raises(FormatError, match="gravel"):
            parse_scene_config("dims = 10\nmaterial = 0.5\ngravel = 3\n", is_text=True)

    def test_missing_required_key(self):
        with pytest.raises(FormatError, match="material"):
            parse_scene_config("dims = 10\n", is_text=True)
