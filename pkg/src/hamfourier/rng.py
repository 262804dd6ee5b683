"""Counter-based random substreams.

Every stochastic task derives its own generator from (master seed, role,
indices...), so results never depend on execution order and parallel maps
stay reproducible.
"""

from __future__ import annotations

import numpy as np

# role tags for substream derivation
ROLE_COUPLINGS = 1
ROLE_SPLIT = 2
ROLE_SHOTS = 3
ROLE_TARGET = 4
ROLE_VALID = 5


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the task addressed by (master_seed, *key)."""
    if master_seed < 0:
        raise ValueError("master seed must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([master_seed, *key]))
