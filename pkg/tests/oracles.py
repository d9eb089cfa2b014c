"""Independent brute-force oracles. Nothing here imports the package."""

import itertools
import math
from fractions import Fraction


def full_tree_depths(n):
    """Every multiset of leaf depths realisable by a full binary tree with n leaves."""
    if n == 1:
        return {(0,)}
    out = set()
    for k in range(1, n):
        for left in full_tree_depths(k):
            for right in full_tree_depths(n - k):
                out.add(tuple(sorted(d + 1 for d in left + right)))
    return out


def optimal_weighted_length(counts):
    """Minimum sum(count * depth) over all full binary trees and leaf assignments."""
    counts = list(counts)
    if len(counts) == 1:
        return counts[0]  # lone symbol costs one bit per occurrence
    best = None
    for depths in full_tree_depths(len(counts)):
        for perm in set(itertools.permutations(depths)):
            cost = sum(c * d for c, d in zip(counts, perm))
            best = cost if best is None else min(best, cost)
    return best


def brute_codeword(low, high, max_len=40):
    """Enumerate bit strings by length, then value; first whose dyadic cell fits."""
    for length in range(max_len + 1):
        for k in range(2**length):
            a = Fraction(k, 2**length)
            if low <= a and a + Fraction(1, 2**length) <= high:
                return format(k, f"0{length}b") if length else ""
    raise AssertionError("no codeword found")


def dct_direct(f):
    """DCT-II by the double sum, C(0) = 1/sqrt(2)."""
    c = lambda k: 1 / math.sqrt(2) if k == 0 else 1.0
    out = [[0.0] * 8 for _ in range(8)]
    for u in range(8):
        for v in range(8):
            s = 0.0
            for x in range(8):
                for y in range(8):
                    s += f[x][y] * math.cos((2 * x + 1) * u * math.pi / 16) * math.cos((2 * y + 1) * v * math.pi / 16)
            out[u][v] = 0.25 * c(u) * c(v) * s
    return out


def zigzag_walk():
    """Zigzag order by walking anti-diagonals, alternating direction."""
    order = []
    for s in range(15):
        cells = [(r, s - r) for r in range(8) if 0 <= s - r < 8]
        if s % 2 == 0:
            cells.reverse()  # even diagonals run bottom-left to top-right
        order.extend(cells)
    return order


def exact_interval(message, ranges):
    low, width = Fraction(0), Fraction(1)
    for s in message:
        lo, hi = ranges[s]
        low, width = low + width * lo, width * (hi - lo)
    return low, low + width
