"""Multicolor box-ball system laboratory.

Exact dynamics, carrier processes, Young-diagram invariants and seeded
Monte Carlo experiments, backed by the C++ core in ``bbslab._core``.
"""

import json as _json

from ._core import (  # noqa: F401
    BallConfig,
    ColorDist,
    Partition,
    additive_path,
    apply_k,
    carrier_heights,
    check_capacity_coupling,
    check_soliton_bounds,
    column_length,
    config_from_text,
    cx_run,
    cyclic_step,
    decompose_heights,
    decoupled_heights,
    ell_plus,
    energy,
    estimate_gamma,
    evolve_step,
    g_functional,
    gen_iid,
    gen_permutation,
    gen_uniforms,
    gk_cols,
    gk_rows_bruteforce,
    kappa1_height_survival,
    lambda1_queue,
    num_ascents,
    order_stat_cdf,
    penalized_length,
    phase_classify,
    row_length,
    soliton_decomposition_reached,
    spot_verify_config,
    standardize,
    stationary_pi_decoupled,
    stationary_pi_subcritical,
    to_text,
    unstable_colors,
    young_diagram,
)
from . import _core as _c

__all__ = [name for name in dir() if not name.startswith("_")]


def mc_permutation(n_list, trials, k_max, seed, stream_offset=0, workers=0, verify=False):
    """Permutation-model soliton statistics as a dict (see the JSON schema)."""
    return _json.loads(
        _c.mc_permutation_json(list(n_list), trials, k_max, seed, stream_offset, workers, verify)
    )


def mc_independence(n_list, p, trials, j_max, seed, stream_offset=0, workers=0, verify=False):
    """Independence-model soliton lengths as a dict."""
    if not isinstance(p, ColorDist):
        p = ColorDist(list(p))
    return _json.loads(
        _c.mc_independence_json(list(n_list), p, trials, j_max, seed, stream_offset, workers, verify)
    )


def critical_profile(p, n, trials, seed, workers=0):
    if not isinstance(p, ColorDist):
        p = ColorDist(list(p))
    return _json.loads(_c.critical_profile_json(p, n, trials, seed, workers))


def clt_supercritical(p, n, trials, seed, workers=0):
    if not isinstance(p, ColorDist):
        p = ColorDist(list(p))
    return _json.loads(_c.clt_supercritical_json(p, n, trials, seed, workers))
