"""Seeded random streams.

Every stream is a Mersenne Twister (MT19937, Python's ``random.Random``)
whose seed is the SHA-256 digest of a master seed and a tuple of stream
labels. The digest makes sibling streams (repetition 0, 1, ...) independent
of each other and of evaluation order, and MT19937 output for an integer
seed is identical on every platform.
"""

import hashlib
import os
import random

SEED_ENV_VAR = "MIXSIM_SEED"
DEFAULT_SEED = 0


def derive_seed(master_seed, *labels):
    """Hash ``master_seed`` and ``labels`` into a 64-bit child seed."""
    h = hashlib.sha256()
    h.update(b"mixsim")
    for part in (master_seed, *labels):
        token = str(part).encode("utf-8")
        h.update(len(token).to_bytes(4, "big"))
        h.update(token)
    return int.from_bytes(h.digest()[:8], "big")


def make_rng(seed, *labels):
    """Return a ``random.Random`` stream for ``seed`` and optional labels."""
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise TypeError(f"seed must be an int, got {type(seed).__name__}")
    return random.Random(derive_seed(seed, *labels))


def env_default_seed():
    """Seed from ``$MIXSIM_SEED`` if set, else ``DEFAULT_SEED``."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    return int(raw.strip())
