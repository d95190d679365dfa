"""Shared builders for the test-suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from flipmod import families
from flipmod.flip import flip, flippable_arcs

SEEDS = [
    lambda: families.zigzag(6),
    lambda: families.polygon_fan(7, 3),
    lambda: families.a_triangulation(4, "-"),
    lambda: families.a_triangulation(5, "+"),
    lambda: families.gamma_star(4, 2),
    lambda: families.b_triangulation(3, "-"),
    lambda: families.b_triangulation(2, "+"),
]


def random_walk(T, steps, rng):
    for _ in range(steps):
        arcs = flippable_arcs(T)
        if not arcs:
            break
        T = flip(T, rng.choice(arcs))[0]
    return T


@st.composite
def triangulations(draw, seeds=SEEDS, max_steps=12):
    """A family member pushed through a random walk of flips."""
    T = draw(st.sampled_from(seeds))()
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_walk(T, draw(st.integers(0, max_steps)), rng)


def has_loop_at(T, v):
    return any(T.ends(e) == (v, v) for e in T.interior_arcs())
