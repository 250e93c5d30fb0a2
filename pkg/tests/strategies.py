"""Hypothesis strategies built on the package's seeded generator."""

import random
from functools import lru_cache

from hypothesis import strategies as st

from bvbicomplex.chern_simons import build_cs_context
from bvbicomplex.jet_calculus import JetContext
from bvbicomplex.lie_algebra import load_algebra
from bvbicomplex.random_elements import RandomConfig, random_element, random_tuple

seeds = st.integers(min_value=0, max_value=2**31 - 1)


@lru_cache(maxsize=None)
def cs(name: str = "sl2", order: int = 2):
    return build_cs_context(load_algebra(name), max_jet_order=order)


@lru_cache(maxsize=None)
def scalar_ctx(n: int = 2, order: int = 3) -> JetContext:
    """Two scalar fields on R^n: an even ``x`` and an odd ghost ``y``."""
    return JetContext.build(n, [("x", 0, 0, 0, 1), ("y", 1, 1, 0, 1)], order)


def element(ctx, seed, **kw):
    cfg = RandomConfig(**{"n_terms": 2, **kw})
    return random_element(ctx, random.Random(seed), cfg)


def elements(ctx, seed, k, **kw):
    cfg = RandomConfig(**{"n_terms": 4, "pool": 1, **kw})
    return random_tuple(ctx, random.Random(seed), cfg, k)
