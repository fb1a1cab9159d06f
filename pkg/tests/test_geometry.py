import math
import random

import pytest

from cspart.geometry import (block_index, deploy, format_deployment,
                             make_grid_explicit, make_grid_from_ranges,
                             read_deployment, write_deployment)


class TestGridFromRanges:
    def test_paper_ranges(self):
        g = make_grid_from_ranges(50, 50, 10, 14)
        assert g.block_side == pytest.approx(10 / math.sqrt(2))
        assert g.rows == 8 and g.cols == 8
        assert g.m == 64
        assert g.guarantee_ok

    def test_degenerate_single_block(self):
        g = make_grid_from_ranges(50, 50, 50 * math.sqrt(2), 50 * math.sqrt(2))
        assert g.block_side == pytest.approx(50)
        assert (g.rows, g.cols) == (1, 1)

    def test_min_range_drives_side(self):
        g = make_grid_from_ranges(50, 50, 36, 35)
        assert g.block_side == pytest.approx(35 / math.sqrt(2))
        assert g.rows == g.cols == 3

    @pytest.mark.parametrize("args", [(0, 50, 10, 10), (50, -1, 10, 10),
                                      (50, 50, 0, 10), (50, 50, 10, 0)])
    def test_rejects_nonpositive(self, args):
        with pytest.raises(ValueError):
            make_grid_from_ranges(*args)


class TestGridExplicit:
    def test_guarantee_holds(self):
        g = make_grid_explicit(50, 50, 2, 2, 40, 40)
        assert g.block_side == 25
        assert g.guarantee_ok  # 25*sqrt(2) ~ 35.355 <= 40

    def test_guarantee_violated_is_warning_flag(self):
        g = make_grid_explicit(50, 50, 2, 2, 40, 35)
        assert not g.guarantee_ok  # 35.355 > 35

    def test_single_block(self):
        g = make_grid_explicit(50, 50, 1, 1, 100, 100)
        assert g.m == 1 and g.guarantee_ok

    def test_rejects_zero_rows(self):
        with pytest.raises(ValueError):
            make_grid_explicit(50, 50, 0, 2, 10, 10)


class TestBlockIndex:
    def setup_method(self):
        self.grid = make_grid_explicit(50, 50, 2, 2, 40, 40)

    def test_origin(self):
        assert block_index(self.grid, 0, 0) == 0

    def test_interior_gridline_goes_to_higher_block(self):
        assert block_index(self.grid, 25, 0) == 1

    def test_far_corner_clamped(self):
        assert block_index(self.grid, 50, 50) == 3

    def test_outside_region(self):
        with pytest.raises(ValueError):
            block_index(self.grid, 51, 0)
        with pytest.raises(ValueError):
            block_index(self.grid, 0, -0.1)


class TestDeploy:
    def test_empty(self):
        grid = make_grid_explicit(50, 50, 2, 2, 40, 40)
        dep = deploy(0, grid, 40, 40, 1)
        assert dep.nodes == ()

    def test_deterministic(self):
        grid = make_grid_explicit(50, 50, 2, 2, 40, 40)
        a = deploy(100, grid, 40, 40, 1)
        b = deploy(100, grid, 40, 40, 1)
        assert a == b

    def test_different_seed_differs(self):
        grid = make_grid_explicit(50, 50, 2, 2, 40, 40)
        assert deploy(50, grid, 40, 40, 1) != deploy(50, grid, 40, 40, 2)

    def test_blocks_match_block_index(self):
        grid = make_grid_explicit(50, 50, 3, 3, 36, 36)
        dep = deploy(300, grid, 36, 36, 9)
        for nd in dep.nodes:
            assert nd.block == block_index(grid, nd.x, nd.y)

    def test_uniformity_binomial_3_sigma(self):
        grid = make_grid_explicit(50, 50, 2, 2, 40, 40)
        n = 10000
        dep = deploy(n, grid, 40, 40, 3)
        counts = {b: 0 for b in range(4)}
        for nd in dep.nodes:
            counts[nd.block] += 1
        sigma = math.sqrt(n * 0.25 * 0.75)
        for b in range(4):
            assert abs(counts[b] - n / 4) <= 3 * sigma

    def test_rejects_negative_n(self):
        grid = make_grid_explicit(50, 50, 2, 2, 40, 40)
        with pytest.raises(ValueError):
            deploy(-1, grid, 40, 40, 1)


class TestBlockGuarantee:
    def test_same_block_nodes_within_t_and_block_within_s(self):
        grid = make_grid_explicit(50, 50, 2, 2, 40, 40)
        assert grid.guarantee_ok
        dep = deploy(60, grid, 40, 40, 11)
        by_block = dep.nodes_by_block()
        rng = random.Random(0)
        for b, ids in by_block.items():
            row, col = divmod(b, grid.cols)
            x0, y0 = col * grid.block_side, row * grid.block_side
            samples = [(x0 + rng.random() * grid.block_side,
                        y0 + rng.random() * grid.block_side)
                       for _ in range(1000)]
            for i in ids:
                u = dep.nodes[i]
                for j in ids:
                    v = dep.nodes[j]
                    assert math.hypot(u.x - v.x, u.y - v.y) <= dep.T
                for sx, sy in samples:
                    assert math.hypot(u.x - sx, u.y - sy) <= dep.S


class TestDeploymentFile:
    def test_round_trip_bit_exact(self, tmp_path):
        grid = make_grid_explicit(50, 50, 3, 3, 36, 36)
        dep = deploy(40, grid, 36.0, 36.0, 17)
        path = tmp_path / "dep.txt"
        write_deployment(dep, path)
        first = path.read_bytes()
        dep2 = read_deployment(path)
        assert format_deployment(dep2).encode() == first
        assert dep2.n == dep.n
        assert [nd.block for nd in dep2.nodes] == [nd.block for nd in dep.nodes]

    def test_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("not a deployment\n")
        with pytest.raises(ValueError):
            read_deployment(path)
