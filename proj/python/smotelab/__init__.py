"""SMOTE-k / SMOTE-K sampling with distance metrics and convergence sweeps."""

import json as _json

from ._core import (
    DistributionSpec,
    SmoteLabError,
    generate_batch,
    kde_density,
    kl_histogram,
    ks_one_sample,
    ks_two_sample,
    load_column,
    neighbor_ordering,
    normalize_minmax,
    sample_iid,
    silverman_bandwidth,
    wasserstein1,
)
from . import _core


def _as_json(config):
    return config if isinstance(config, str) else _json.dumps(config)


def validate_config(config):
    """Returns (normalized config dict or None, list of (field, message))."""
    normalized, issues = _core.validate_config(_as_json(config))
    return (_json.loads(normalized) if normalized else None), issues


def run_sweep(config):
    """Runs a sweep config (dict or JSON text); returns a list of row dicts."""
    return _core.run_sweep(_as_json(config))


def execute(config, out_dir):
    """Runs any command config and writes its artifacts under out_dir."""
    return _core.execute(_as_json(config), out_dir)


__all__ = [
    "DistributionSpec", "SmoteLabError", "execute", "generate_batch", "kde_density",
    "kl_histogram", "ks_one_sample", "ks_two_sample", "load_column", "neighbor_ordering",
    "normalize_minmax", "run_sweep", "sample_iid", "silverman_bandwidth", "validate_config",
    "wasserstein1",
]
