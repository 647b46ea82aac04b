import json
import os

import pytest

from blocksmoo.errors import ConfigError
from blocksmoo.experiments import (
    BLOCK_ALTERNATE,
    BLOCK_SMOO,
    FUNCTION_ALTERNATE,
    WEIGHTED_SUM,
    CellResult,
    ExperimentConfig,
    build_dataset,
    build_problem,
    run_cell,
    run_experiment,
    summarize,
)


def small_config(**overrides):
    base = dict(
        problem={"kind": "synthetic", "seed": 1, "n_train": 128, "n_test": 32, "d": 6, "q": 3, "rank": 2, "noise_sigma": 0.05},
        rank=2,
        batch_size=16,
        budget={"kind": "work-units", "amount": 60_000},
        algorithms=[BLOCK_SMOO, WEIGHTED_SUM],
        step_sizes=[0.01, 0.02],
        seeds=[0, 1],
        out_dir="unused",
    )
    base.update(overrides)
    return ExperimentConfig.from_dict(base)


class TestConfig:
    def test_round_trip(self):
        config = small_config()
        again = ExperimentConfig.from_dict(config.to_dict())
        assert again.to_dict() == config.to_dict()

    def test_unknown_field_reports_path(self):
        with pytest.raises(ConfigError) as err:
            ExperimentConfig.from_dict({"problem": {"kind": "synthetic"}, "rank": 1, "batch_size": 1, "budget": {"kind": "work-units", "amount": 1}, "stepsizes": [0.1]})
        assert err.value.field == "stepsizes"

    def test_bad_algorithm_reports_index(self):
        with pytest.raises(ConfigError) as err:
            small_config(algorithms=[BLOCK_SMOO, "sgd"])
        assert err.value.field == "algorithms[1]"

    def test_bad_budget_kind(self):
        with pytest.raises(ConfigError) as err:
            small_config(budget={"kind": "steps", "amount": 10})
        assert err.value.field == "budget.kind"

    def test_missing_required_field(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"rank": 1})


class TestBudgetAccounting:
    def test_work_unit_totals_land_within_one_cycle(self):
        config = small_config()
        problem = build_problem(config)
        budget = config.budget["amount"]
        for algorithm in (BLOCK_SMOO, WEIGHTED_SUM, FUNCTION_ALTERNATE, BLOCK_ALTERNATE):
            result = run_cell(problem, config, algorithm, 0.01, seed=0)
            assert not result.failed
            assert result.work_units <= budget
            # the shortfall is below the cost of one more scheduling quantum
            p = 10 if algorithm in (BLOCK_SMOO, FUNCTION_ALTERNATE) else 1
            cost_factor = 1 if algorithm in (BLOCK_SMOO, FUNCTION_ALTERNATE) else problem.q
            quantum = problem.n * problem.batch_size * cost_factor * p
            assert budget - result.work_units < quantum

    def test_data_pass_budget(self):
        config = small_config(budget={"kind": "data-passes", "amount": 2}, m=[1, 1, 1])
        problem = build_problem(config)
        result = run_cell(problem, config, BLOCK_SMOO, 0.01, seed=0)
        # 2 passes over 128 rows at batch 16 = 16 draws; cycle = s*p = 6
        # draws, so 3 outer iterations round to 18 inner steps
        assert result.rows[-1]["work_units"] == result.work_units

    def test_checkpoints_monotone_in_work(self):
        config = small_config()
        problem = build_problem(config)
        result = run_cell(problem, config, BLOCK_SMOO, 0.01, seed=0)
        work = [row["work_units"] for row in result.rows]
        assert work == sorted(work)
        assert len(set(work)) == len(work)

    def test_wall_clock_budget_cell(self):
        config = small_config(budget={"kind": "wall-clock", "amount": 0.2})
        problem = build_problem(config)
        result = run_cell(problem, config, BLOCK_SMOO, 0.01, seed=0)
        assert not result.failed
        assert result.rows and result.work_units > 0


class TestRunExperiment:
    def test_summary_selects_lowest_final_loss(self):
        results = [
            CellResult("block-smoo", 0.01, 0, [], 0.5, 10),
            CellResult("block-smoo", 0.01, 1, [], 0.7, 10),
            CellResult("block-smoo", 0.05, 0, [], 0.2, 10),
            CellResult("block-smoo", 0.05, 1, [], 0.1, 10),
            CellResult("weighted-sum", 0.01, 0, [], 0.3, 10),
            CellResult("weighted-sum", 0.05, 0, [], None, 0, failed=True, error="nan"),
        ]
        summary = summarize(results)
        assert summary["algorithms"]["block-smoo"]["best_step_size"] == 0.05
        assert summary["algorithms"]["block-smoo"]["best_mean_final_test_loss"] == pytest.approx(0.15)
        assert summary["algorithms"]["weighted-sum"]["best_step_size"] == 0.01
        assert summary["failed_cells"] == 1

    def test_full_grid_writes_cells_and_summary(self, tmp_path):
        config = small_config()
        summary = run_experiment(config, out_dir=str(tmp_path))
        assert summary["cells"] == 8
        files = sorted(os.listdir(tmp_path / "cells"))
        assert len(files) == 8
        with open(tmp_path / "summary.json") as fh:
            loaded = json.load(fh)
        assert set(loaded["algorithms"]) == {BLOCK_SMOO, WEIGHTED_SUM}

    def test_all_four_algorithms_produce_cells(self, tmp_path):
        config = small_config(
            algorithms=[BLOCK_SMOO, WEIGHTED_SUM, FUNCTION_ALTERNATE, BLOCK_ALTERNATE],
            step_sizes=[0.02],
            seeds=[0],
        )
        summary = run_experiment(config, out_dir=str(tmp_path))
        assert summary["failed_cells"] == 0
        assert set(summary["algorithms"]) == set(config.algorithms)
        assert len(os.listdir(tmp_path / "cells")) == 4

    def test_single_cell_grid(self, tmp_path):
        config = small_config(algorithms=[BLOCK_SMOO], step_sizes=[0.01], seeds=[3])
        summary = run_experiment(config, out_dir=str(tmp_path))
        assert summary["cells"] == 1
        assert summary["algorithms"][BLOCK_SMOO]["best_step_size"] == 0.01

    def test_rerun_is_byte_identical(self, tmp_path):
        config = small_config(algorithms=[BLOCK_SMOO], step_sizes=[0.02], seeds=[0])
        first_dir, second_dir = tmp_path / "a", tmp_path / "b"
        run_experiment(config, out_dir=str(first_dir))
        run_experiment(config, out_dir=str(second_dir))
        for sub in ("summary.json",):
            assert (first_dir / sub).read_bytes() == (second_dir / sub).read_bytes()
        for name in os.listdir(first_dir / "cells"):
            assert (first_dir / "cells" / name).read_bytes() == (second_dir / "cells" / name).read_bytes()

    def test_worker_pool_matches_inline(self, tmp_path):
        config = small_config(step_sizes=[0.01], seeds=[0, 1])
        inline = run_experiment(config, workers=1, out_dir=str(tmp_path / "inline"))
        pooled = run_experiment(config, workers=2, out_dir=str(tmp_path / "pooled"))
        assert inline["algorithms"] == pooled["algorithms"]

    def test_quadratic_problem_kind(self, tmp_path):
        config = ExperimentConfig.from_dict(
            dict(
                problem={"kind": "quadratic", "q": 2, "n": 6, "seed": 3, "noise": {"kind": "gaussian", "scale": 0.2}},
                rank=1,
                batch_size=1,
                budget={"kind": "work-units", "amount": 3000},
                algorithms=[BLOCK_SMOO],
                step_sizes=[0.05],
                seeds=[0],
                partition="two-block",
            )
        )
        summary = run_experiment(config, out_dir=str(tmp_path))
        assert summary["cells"] == 1 and summary["failed_cells"] == 0

    def test_diverging_cell_marked_failed(self):
        config = small_config(step_sizes=[50.0], algorithms=[BLOCK_SMOO], seeds=[0])
        problem = build_problem(config)
        result = run_cell(problem, config, BLOCK_SMOO, 50.0, seed=0)
        assert result.failed
        assert "t=" in result.error


class TestDatasets:
    def test_truncation_passthrough(self):
        config = small_config(
            problem={"kind": "synthetic", "seed": 2, "n_train": 64, "n_test": 32, "d": 4, "q": 2, "rank": 1, "noise_sigma": 0.0, "truncate": [32, 8]}
        )
        dataset = build_dataset(config.problem)
        assert dataset.n_train == 32 and dataset.n_test == 8

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError):
            build_dataset({"kind": "imagenet"})

    def test_response_subset(self):
        cfg = {"kind": "synthetic", "seed": 2, "n_train": 32, "n_test": 8, "d": 4, "q": 5, "rank": 2, "noise_sigma": 0.0, "responses": [0, 2, 4]}
        dataset = build_dataset(cfg)
        assert dataset.Y.shape[1] == 3
        full = build_dataset({**cfg, "responses": None})
        import numpy as np

        np.testing.assert_array_equal(dataset.Y, full.Y[:, [0, 2, 4]])
        with pytest.raises(ConfigError):
            build_dataset({**cfg, "responses": [7]})
