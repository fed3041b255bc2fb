import math
import os
import pathlib

import numpy as np
import pytest

import smotelab

FIXTURES = pathlib.Path(
    os.environ.get("SMOTELAB_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[2] / "data" / "fixtures")
)


def test_distribution_values():
    g = smotelab.DistributionSpec.gaussian()
    assert g.kind == "gaussian"
    assert g.pdf(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-12)
    assert g.quantile(0.975) == pytest.approx(1.959964, abs=1e-6)
    assert smotelab.DistributionSpec.exponential().cdf(math.log(2)) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(smotelab.SmoteLabError):
        smotelab.DistributionSpec.uniform(1.0, 1.0)
    with pytest.raises(ValueError):
        g.quantile(1.0)


def test_neighbor_ordering_and_batches():
    idx, dist = smotelab.neighbor_ordering(np.array([0.0, 2.0, 5.0]), 2)
    assert idx == [1, 0]
    np.testing.assert_allclose(dist, [3.0, 5.0])
    idx2, _ = smotelab.neighbor_ordering(np.array([[0.0, 0.0], [3.0, 4.0], [1.0, 0.0]]), 0)
    assert idx2 == [2, 1]

    z = smotelab.generate_batch(np.array([0.0, 10.0]), k=1, count=10000, seed=3)
    assert z.shape == (10000,)
    assert z.min() >= 0.0 and z.max() <= 10.0
    again = smotelab.generate_batch(np.array([0.0, 10.0]), k=1, count=10000, seed=3, threads=2)
    np.testing.assert_array_equal(z, again)

    planar = smotelab.generate_batch(np.random.default_rng(0).random((12, 3)), k=2, count=50,
                                     variant="pool")
    assert planar.shape == (50, 3)
    with pytest.raises(ValueError):
        smotelab.generate_batch(np.array([0.0, 1.0]), k=1, count=0)


def test_metrics_hand_values():
    u = smotelab.DistributionSpec.uniform()
    assert smotelab.ks_one_sample(np.array([0.1, 0.5, 0.9]), u) == pytest.approx(7 / 30, abs=1e-9)
    assert smotelab.ks_two_sample(np.array([0.0, 1.0]), np.array([0.0, 0.5, 1.0])) == pytest.approx(1 / 6)
    assert smotelab.wasserstein1(np.array([0.0, 0.0, 1.0, 1.0]), np.full(4, 0.5)) == pytest.approx(0.5)
    z = smotelab.sample_iid(u, 200000, seed=1)
    assert smotelab.kl_histogram(z, u) < 0.005
    grid = np.linspace(-3, 3, 61)
    dens = smotelab.kde_density(smotelab.sample_iid(smotelab.DistributionSpec.gaussian(), 5000, 2), grid)
    assert np.abs(dens - np.exp(-grid**2 / 2) / math.sqrt(2 * math.pi)).max() < 0.06


def test_dataset_loading():
    values, dropped = smotelab.load_column(str(FIXTURES / "air_quality_sample.csv"), "CO(GT)",
                                           missing_sentinel=-200, delimiter=";", decimal=",")
    assert dropped > 0
    assert values.min() > 0
    unit, lo, hi = smotelab.normalize_minmax(np.array([2.0, 4.0, 6.0]))
    np.testing.assert_array_equal(unit, [0.0, 0.5, 1.0])
    assert (lo, hi) == (2.0, 6.0)
    with pytest.raises(ValueError, match="ColumnNotFound"):
        smotelab.load_column(str(FIXTURES / "housing_sample.csv"), "no_such_column")


def test_config_and_sweep(tmp_path):
    normalized, issues = smotelab.validate_config({"command": "ks-sweep", "params": {"trials": -1}})
    assert normalized is None
    assert any(field == "params.trials" for field, _ in issues)

    normalized, issues = smotelab.validate_config({"command": "w1-sweep"})
    assert not issues
    assert normalized["params"]["normalize"] is True

    config = {"command": "ks-sweep", "seed": 2,
              "params": {"n_grid": [8, 20, 70], "k_values": [1], "trials": 20, "draws_per_trial": 1000}}
    rows = smotelab.run_sweep(config)
    means = [r["mean"] for r in rows]
    assert means == sorted(means, reverse=True)
    assert rows == smotelab.run_sweep(config)

    summary = smotelab.execute(config, str(tmp_path))
    assert "n=8 k=1" in summary
    assert (tmp_path / "ks-sweep.csv").read_text().startswith("n,k,mean,std_error,trials\n")
    assert (tmp_path / "provenance.json").exists()
