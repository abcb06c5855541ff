"""Seeded random modules and maps over the corpus algebras."""

import random

from quivrep import direct_sum, hom_space
from quivrep.homology import injective_envelope
from quivrep.repmod import ModuleMap, cokernel, kernel


def random_module(rng, ar, parts=(1, 3)):
    mods = [rng.choice(ar.modules) for _ in range(rng.randint(*parts))]
    return direct_sum(mods).module if len(mods) > 1 else mods[0]


def random_map(rng, M, N):
    H = hom_space(M, N)
    F = M.field
    return H.element([F(rng.randint(-2, 2)) for _ in range(H.dim)])


def random_mono(rng, ar, X):
    """An injective map X -> Y: the injective envelope, sometimes summed with a random map."""
    env = injective_envelope(X).map
    if rng.random() < 0.5:
        return env
    R = random_module(rng, ar, (1, 1))
    bp = direct_sum([env.target, R])
    return bp.injections[0] @ env + bp.injections[1] @ random_map(rng, X, R)


def random_short_exact(rng, ar):
    """(i, d) with 0 -> X -> Y -> Z -> 0 exact, X the kernel of a random map out of Y."""
    Y = random_module(rng, ar)
    h = random_map(rng, Y, random_module(rng, ar, (1, 2)))
    X, i = kernel(h)
    Z, d = cokernel(i)
    return i, d


def instances(algebras, count, seed):
    rng = random.Random(seed)
    names = sorted(algebras)
    for k in range(count):
        A, ar = algebras[names[k % len(names)]]
        yield rng, A, ar
