"""Arithmetic coding over a static ProbabilityModel.

Three pieces:

* ``arith_encode_exact`` narrows [0, 1) with exact rationals.  It is the
  reference used by tests and is limited to short messages.
* ``select_codeword`` picks the shortest dyadic fraction inside an interval.
* ``arith_encode`` / ``arith_decode`` are the finite-precision coder: a 31-bit
  window with renormalization and pending (underflow) bits.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .bitio import BitSequence
from .errors import TrailingGarbage, TruncatedStream, UnknownSymbol
from .symbol_model import ProbabilityModel

EXACT_MAX_SYMBOLS = 64

STATE_BITS = 31
FULL = 1 << STATE_BITS
MASK = FULL - 1
HALF = FULL >> 1
QUARTER = FULL >> 2
THREE_QUARTERS = HALF + QUARTER
# every symbol must keep a non-empty slice of the narrowest renormalized window
MAX_TOTAL = QUARTER


@dataclass(frozen=True)
class CoderInterval:
    low: Fraction
    high: Fraction

    def __post_init__(self):
        if not 0 <= self.low < self.high <= 1:
            raise ValueError(f"invalid interval [{self.low}, {self.high})")

    @property
    def range(self) -> Fraction:
        return self.high - self.low

    def __contains__(self, x) -> bool:
        return self.low <= x < self.high


def arith_encode_exact(symbols: Iterable[int], model: ProbabilityModel) -> CoderInterval:
    # Both bounds are computed from the interval as it stood before the symbol.
    low, rng = Fraction(0), Fraction(1)
    for i, s in enumerate(symbols):
        if i >= EXACT_MAX_SYMBOLS:
            raise ValueError(f"exact coder is limited to {EXACT_MAX_SYMBOLS} symbols")
        e = model.entry(s)
        low, rng = low + rng * e.range_low, rng * e.probability
    return CoderInterval(low, low + rng)


def select_codeword(interval: CoderInterval) -> BitSequence:
    """Shortest b with [0.b, 0.b + 2^-len(b)) inside the interval; smallest on ties."""
    low, high = interval.low, interval.high
    length = 0
    while True:
        scale = 1 << length
        k = math.ceil(low * scale)
        if Fraction(k + 1, scale) <= high:
            return BitSequence.from_bitstring(format(k, f"0{length}b") if length else "")
        length += 1


def codeword_value(bits: BitSequence) -> Fraction:
    """Read a bit string as the binary fraction 0.b."""
    if bits.bit_length == 0:
        return Fraction(0)
    return Fraction(int(bits.to_bitstring(), 2), 1 << bits.bit_length)


@dataclass(frozen=True)
class IntegerCoderState:
    low: int
    high: int
    pending_bits: int


def _check_total(model: ProbabilityModel):
    if model.total > MAX_TOTAL:
        raise ValueError(f"model total {model.total} exceeds coder limit {MAX_TOTAL}")


def arith_encode(
    symbols: Iterable[int],
    model: ProbabilityModel,
    trace: Optional[list] = None,
) -> BitSequence:
    """Encode with the integer coder.

    If ``trace`` is a list, the coder state after each symbol's renormalization
    is appended to it.
    """
    _check_total(model)
    total = model.total
    slices = {e.symbol: (e.cum_low, e.cum_low + e.count) for e in model.entries}
    low, high, pending = 0, MASK, 0
    out = []
    emit = out.append
    for s in symbols:
        try:
            c_lo, c_hi = slices[s]
        except KeyError:
            raise UnknownSymbol(s) from None
        rng = high - low + 1
        high = low + rng * c_hi // total - 1
        low = low + rng * c_lo // total
        while True:
            if high < HALF:
                emit("0" + "1" * pending)
                pending = 0
            elif low >= HALF:
                emit("1" + "0" * pending)
                pending = 0
                low -= HALF
                high -= HALF
            elif low >= QUARTER and high < THREE_QUARTERS:
                pending += 1
                low -= QUARTER
                high -= QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
        if trace is not None:
            trace.append(IntegerCoderState(low, high, pending))
    # two bits pick a point strictly inside the final window
    pending += 1
    if low < QUARTER:
        emit("0" + "1" * pending)
    else:
        emit("1" + "0" * pending)
    return BitSequence.from_bitstring("".join(out))


def arith_decode(bits: BitSequence, model: ProbabilityModel, count: int) -> list[int]:
    _check_total(model)
    total = model.total
    cum = [e.cum_low for e in model.entries]
    syms = [e.symbol for e in model.entries]
    highs = [e.cum_low + e.count for e in model.entries]

    stream = bits.to_bitstring()
    n = len(stream)
    # bits past the end read as zero; consumption is checked afterwards
    head = stream[:STATE_BITS].ljust(STATE_BITS, "0")
    value = int(head, 2)
    pos = STATE_BITS
    low, high = 0, MASK
    shifts = 0
    out = []
    append = out.append
    for _ in range(count):
        rng = high - low + 1
        target = ((value - low + 1) * total - 1) // rng
        if not 0 <= target < total:
            raise TruncatedStream("code value left the coder window")
        i = bisect_right(cum, target) - 1
        append(syms[i])
        high = low + rng * highs[i] // total - 1
        low = low + rng * cum[i] // total
        while True:
            if high < HALF:
                pass
            elif low >= HALF:
                low -= HALF
                high -= HALF
                value -= HALF
            elif low >= QUARTER and high < THREE_QUARTERS:
                low -= QUARTER
                high -= QUARTER
                value -= QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
            value = (value << 1) | (pos < n and stream[pos] == "1")
            pos += 1
            shifts += 1
    used = shifts + 2
    if used > n:
        raise TruncatedStream(f"stream has {n} bits, decoding {count} symbols needs {used}")
    if used < n:
        raise TrailingGarbage(f"{n - used} unread bits after {count} symbols")
    return out


def information_content(symbols: Sequence[int], model: ProbabilityModel) -> float:
    """-sum(log2 p(s)) in bits."""
    t = model.total
    counts = {e.symbol: e.count for e in model.entries}
    return sum(math.log2(t / counts[s]) for s in symbols)
