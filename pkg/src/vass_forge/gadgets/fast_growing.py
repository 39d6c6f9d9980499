"""The fast-growing hierarchy F_1(n) = 2n, F_k(n) = F_{k-1}^n(1)."""

from __future__ import annotations

from ..errors import MagnitudeCap

DEFAULT_MAX_BITS = 1 << 20


def fast_growing(k: int, n: int, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Exact F_k(n); raises MagnitudeCap once a value would exceed ``max_bits`` bits."""
    if k < 1:
        raise ValueError("level k must be >= 1")
    if n < 0:
        raise ValueError("argument n must be >= 0")
    if k == 1:
        if (2 * n).bit_length() > max_bits:
            raise MagnitudeCap(f"F_1(n) with a {n.bit_length()}-bit n exceeds {max_bits} bits")
        return 2 * n
    if k == 2:
        # 2**n has n + 1 bits
        if n + 1 > max_bits:
            raise MagnitudeCap(f"F_2(n) with n = {n if n.bit_length() < 64 else f'a {n.bit_length()}-bit number'} exceeds {max_bits} bits")
        return 1 << n
    value = 1
    for _ in range(n):
        value = fast_growing(k - 1, value, max_bits)
    return value


def iterate(k: int, times: int, start: int = 1, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """F_k applied ``times`` times to ``start``."""
    value = start
    for _ in range(times):
        value = fast_growing(k, value, max_bits)
    return value


def ackermann(n: int, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """F_omega(n) = F_n(n)."""
    return fast_growing(max(n, 1), n, max_bits)
