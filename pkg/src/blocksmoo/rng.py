"""Deterministic random-stream management.

One root 64-bit seed is split into independent streams, keyed by the purpose
the stream serves and by a run index, so that parallel runs and the different
sources of randomness inside a single run (block order, objective order,
minibatch draws, output selection, initialization) never share state.
"""

from __future__ import annotations

import numpy as np

_PURPOSES = ("sigma", "pi", "minibatch", "output", "init")
_MASK64 = (1 << 64) - 1


def purpose_stream(seed: int, purpose: str, run_index: int = 0) -> np.random.Generator:
    """Return the dedicated generator for (seed, run_index, purpose).

    The same triple always yields a bit-identical stream; distinct triples
    yield statistically independent streams.
    """
    if purpose not in _PURPOSES:
        raise ValueError(f"unknown stream purpose {purpose!r}; expected one of {_PURPOSES}")
    ss = np.random.SeedSequence(
        entropy=int(seed) & _MASK64,
        spawn_key=(int(run_index), _PURPOSES.index(purpose)),
    )
    return np.random.default_rng(ss)


def run_streams(seed: int, run_index: int = 0) -> dict[str, np.random.Generator]:
    """All per-purpose streams for one run, keyed by purpose name."""
    return {p: purpose_stream(seed, p, run_index) for p in _PURPOSES}
