"""Rainbow-framework coded caching and coded MapReduce.

Scheme builders return ``Scheme`` objects; the simulation and shuffle helpers
return plain dicts decoded from the core's JSON reports.
"""

import json

from ._core import (
    RainbowError,
    Scheme,
    cdc_bound,
    cutset_bound,
    cyclic,
    gf_mul,
    linear_block,
    man,
    man_rate,
    mds_matrix,
    pda_import,
    union_subsets,
    universe_scheme,
    verify_mds,
)
from . import _core

__all__ = [
    "RainbowError",
    "Scheme",
    "cdc_bound",
    "cutset_bound",
    "cyclic",
    "gf_mul",
    "linear_block",
    "man",
    "man_rate",
    "mapreduce",
    "mds_matrix",
    "pda_import",
    "rainbow_3ap",
    "search_rainbow",
    "simulate",
    "union_subsets",
    "universe_scheme",
    "verify_mds",
]


def search_rainbow(m, strategy="greedy", budget=None, deletions=(), chi=None):
    """Rainbow 3-AP set on [2m] as a dict with keys n, A, chi, num_colors, ..."""
    return json.loads(_core.search_rainbow(m, strategy, budget, list(deletions), dict(chi or {})))


def rainbow_3ap(ap, field="GF2", delivery="per-color"):
    """Scheme from a rainbow AP dict (as returned by search_rainbow)."""
    return _core.rainbow_3ap(json.dumps(ap), field, delivery)


def simulate(scheme, N, policy="worst-case-distinct", count=100, seed=0, packet_size=64):
    return json.loads(_core.simulate_json(scheme, N, policy, count, seed, packet_size))


def mapreduce(scheme, Q=None, value_size=16, seed=0, multicast=False):
    return json.loads(_core.mapreduce_json(scheme, Q, value_size, seed, multicast))
