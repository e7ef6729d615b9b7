"""Shared random samplers for property and acceptance tests.

Random mutation walks are conditioned on a cheap support-size estimate:
the naive bound on the exchange-binomial term count (product of operand
term counts) must stay under a cap.  Wild quivers whose variables would
blow up past desk scale are resampled; every retained walk runs its full
length with exact division checked at each step.
"""

import random

from clusterlab.quiver import Quiver
from clusterlab.seeds import Seed, initial_seed, mutate_seed

WALK_SIZE_CAP = 4000


def random_quiver(rng: random.Random, n: int, max_mult: int = 2) -> Quiver:
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-max_mult, max_mult)
            b[i][j], b[j][i] = v, -v
    return Quiver(b)


def exchange_size_estimate(s: Seed, i: int) -> int:
    into = out = 1
    for j in range(s.n):
        m = s.quiver.b[j][i]
        if m > 0:
            into *= s.cluster[j].term_count() ** m
        elif m < 0:
            out *= s.cluster[j].term_count() ** (-m)
        if into > 10**7 or out > 10**7:
            return 10**7
    return into + out


def sample_walk(
    rng: random.Random,
    length: int = 15,
    max_n: int = 4,
    cap: int = WALK_SIZE_CAP,
    on_step=None,
):
    """One random mutation walk within the size cap; returns the final
    seed.  ``on_step(seed)`` is called after every mutation."""
    while True:
        n = rng.randint(1, max_n)
        s = initial_seed(random_quiver(rng, n))
        ok = True
        for _ in range(length):
            i = rng.randrange(n)
            if exchange_size_estimate(s, i) > cap:
                ok = False
                break
            s = mutate_seed(s, i)
            if on_step is not None:
                on_step(s)
        if ok:
            return s
