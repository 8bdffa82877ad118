"""Python bindings for the procova two-stage estimator."""

import json

from ._core import ProcovaError, checks, fit, t_cdf, t_quantile
from ._core import simulate as _simulate

__all__ = ["ProcovaError", "checks", "fit", "simulate", "t_cdf", "t_quantile"]
__version__ = "0.1.0"


def simulate(scenario="A", shift=1, n=100, n_hist=100, reps=1000, seed=0,
             model="ancova", level=0.95, threads=1):
    """Run one simulation scenario and return the metrics as a dict."""
    return json.loads(_simulate(scenario, shift, n, n_hist, reps, seed, model, level, threads))
