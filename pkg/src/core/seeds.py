"""Deterministic seed derivation.

Seeds for instances, methods and solver iterations are derived by hashing
their identifying parts, so every output is a function of the base seed.

Dependencies:
    - hashlib: SHA-256 digests
"""

import hashlib

SEED_MASK = (1 << 63) - 1


def derive_seed(*parts: object) -> int:
    """Derive a non-negative 63-bit seed from identifying parts.

    :param parts: Values whose ``repr`` identifies the stream
    :type parts: object
    :return: Seed in [0, 2**63)
    :rtype: int
    """
    key = "\x1f".join(repr(part) for part in parts).encode("utf-8")
    digest = hashlib.sha256(key).digest()
    return int.from_bytes(digest[:8], "big") & SEED_MASK
