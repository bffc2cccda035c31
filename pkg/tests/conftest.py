import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ljmse.surface import parse_expr
from ljmse.verify.gen import GenConfig, gen_one

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def typed(calculus: str = "ljmse", level: str = "prop", max_size: int = 12):
    """Hypothesis strategy of (ctx, term, type) triples drawn by the generator."""
    cfg = GenConfig(calculus=calculus, level=level, max_size=max_size)
    return st.integers(0, 2**32 - 1).map(lambda seed: gen_one(cfg, random.Random(seed)))


def P(src: str, cls: str = "term"):
    return parse_expr(src, cls)
