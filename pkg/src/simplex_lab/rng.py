"""Reproducible random streams.

Every sampler takes either an :class:`RngStream` or a ready
``numpy.random.Generator``.  An ``RngStream`` is a (seed, stream) pair mapped
through ``SeedSequence(entropy=seed, spawn_key=(stream,))`` onto a PCG64
generator, so identical pairs give bit-identical draw sequences and distinct
stream ids give independent streams for parallel workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngStream:
    """A named, reproducible source of randomness."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def split(self, offset: int) -> "RngStream":
        """Stream shifted by ``offset``; used for deterministic fan-out."""
        return RngStream(self.seed, self.stream + offset)


def as_generator(rng) -> np.random.Generator:
    """Accept an RngStream, a Generator, or an int seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, (int, np.integer)):
        return RngStream(int(rng)).generator()
    raise TypeError(f"cannot build a Generator from {type(rng).__name__}")
