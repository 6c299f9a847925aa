"""Named, independent random streams derived from one root seed.

Every stochastic component draws from its own stream so that consuming
randomness in one place never perturbs the sequence seen by another.
"""

from __future__ import annotations

import numpy as np

_STREAMS = {
    "design": 0,
    "weights": 1,
    "pso": 2,
    "gp": 3,
    "simulator": 4,
    "macro_rep": 5,
    "random_search": 6,
    "ea": 7,
}


def stream_seed(root: int, stream: str, index: int = 0) -> int:
    """Derive a deterministic child seed for (root, stream, index)."""
    ss = np.random.SeedSequence([int(root), _STREAMS[stream], int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def stream_rng(root: int, stream: str, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(stream_seed(root, stream, index))
