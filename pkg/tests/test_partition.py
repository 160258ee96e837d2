import numpy as np
import pytest

from crackscan.errors import PartitionError
from crackscan.partition import largest_divisible_side, partition_domain, select_facet
from crackscan.volume import BinaryVolume, Box


class TestPartitionDomain:
    def test_250_cube_g5(self):
        specs = partition_domain((250, 250, 250), 5)
        assert len(specs) == 125
        assert all(s.side == 50 for s in specs)

    def test_600_cube_g12(self):
        specs = partition_domain((600, 600, 600), 12)
        assert len(specs) == 1728
        assert all(s.side == 50 for s in specs)

    def test_indivisible_side_rejected(self):
        with pytest.raises(PartitionError, match="100.*3|3.*100"):
            partition_domain((100, 100, 100), 3)

    def test_non_cubic_rejected(self):
        with pytest.raises(PartitionError):
            partition_domain((100, 100, 50), 5)

    def test_lexicographic_q_order(self):
        specs = partition_domain((40, 40, 40), 2)
        assert [s.q for s in specs] == [
            (1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2),
            (2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2),
        ]

    def test_boxes_tile_the_domain(self):
        dims = (24, 24, 24)
        specs = partition_domain(dims, 3)
        cover = np.zeros(dims, dtype=np.int32)
        for s in specs:
            cover[s.box.slices()] += 1
        assert np.all(cover == 1)

    def test_crop_helper(self):
        assert largest_divisible_side((103, 103, 103), 5) == 100
        assert largest_divisible_side((50, 60, 70), 5) == 50
        with pytest.raises(PartitionError):
            largest_divisible_side((3, 3, 3), 5)


class TestSelectFacet:
    def test_all_zero_region_ties_to_minus_x(self):
        vol = BinaryVolume(np.zeros((20, 20, 20), dtype=np.uint8))
        spec = partition_domain(vol.dims, 2)[0]
        fs = select_facet(vol, spec)
        assert fs.facet == "-x"
        assert fs.foreground_count == 0
        assert fs.q == spec.q

    def test_full_plane_on_plus_y(self):
        data = np.zeros((20, 20, 20), dtype=np.uint8)
        spec = partition_domain((20, 20, 20), 2)[0]  # box [0,9]^3
        data[:, 9, :] = 1  # the +y face of that box
        vol = BinaryVolume(data)
        fs = select_facet(vol, spec)
        assert fs.facet == "+y"
        assert fs.foreground_count == spec.side**2

    def test_strict_maximum_wins(self):
        data = np.zeros((10, 10, 10), dtype=np.uint8)
        data[0, 2:6, 2:5] = 1   # 12 interior pixels of the -x facet
        data[2:7, 2:4, 0] = 1   # 10 interior pixels of the -z facet
        vol = BinaryVolume(data)
        spec = partition_domain((10, 10, 10), 1)[0]
        fs = select_facet(vol, spec)
        assert fs.facet == "-x"
        assert fs.foreground_count == 12

    def test_count_matches_brute_force_recount(self):
        rng = np.random.default_rng(47)
        data = (rng.uniform(size=(12, 12, 12)) < 0.3).astype(np.uint8)
        vol = BinaryVolume(data)
        for spec in partition_domain((12, 12, 12), 2):
            fs = select_facet(vol, spec)
            x0, y0, z0 = spec.box.origin
            s = spec.side
            sub = data[x0 : x0 + s, y0 : y0 + s, z0 : z0 + s]
            counts = [
                sub[0, :, :].sum(), sub[-1, :, :].sum(),
                sub[:, 0, :].sum(), sub[:, -1, :].sum(),
                sub[:, :, 0].sum(), sub[:, :, -1].sum(),
            ]
            assert fs.foreground_count == max(counts)
