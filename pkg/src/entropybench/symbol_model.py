"""Symbol statistics: frequency tables and the static probability model."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import EmptyInput, UnknownSymbol

SYMBOL_BITS = 16
MAX_SYMBOL = (1 << SYMBOL_BITS) - 1


def check_symbol(value: int) -> int:
    if not 0 <= value <= MAX_SYMBOL:
        raise ValueError(f"symbol {value} outside [0, {MAX_SYMBOL}]")
    return value


class FrequencyTable:
    """Occurrence counts of each symbol seen in a stream.

    Symbols that never occur are absent; every stored count is >= 1.
    """

    __slots__ = ("_counts", "total")

    def __init__(self, counts: Mapping[int, int]):
        if not counts:
            raise EmptyInput("frequency table needs at least one symbol")
        clean = {}
        for sym, n in counts.items():
            check_symbol(sym)
            if n < 1:
                raise ValueError(f"count for symbol {sym} must be >= 1, got {n}")
            clean[int(sym)] = int(n)
        self._counts = clean
        self.total = sum(clean.values())

    @property
    def entries(self) -> dict[int, int]:
        return dict(self._counts)

    def __getitem__(self, symbol: int) -> int:
        try:
            return self._counts[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def __contains__(self, symbol) -> bool:
        return symbol in self._counts

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrequencyTable):
            return NotImplemented
        return self._counts == other._counts

    def __repr__(self) -> str:
        return f"FrequencyTable({dict(sorted(self._counts.items()))}, total={self.total})"

    def ordered(self) -> list[tuple[int, int]]:
        """(symbol, count) pairs by descending count, ties by ascending symbol."""
        return sorted(self._counts.items(), key=lambda kv: (-kv[1], kv[0]))


def build_frequency_table(symbols: Iterable[int]) -> FrequencyTable:
    counts = Counter(symbols)
    if not counts:
        raise EmptyInput("cannot build a frequency table from an empty stream")
    return FrequencyTable(counts)


@dataclass(frozen=True)
class ModelEntry:
    symbol: int
    probability: Fraction
    range_low: Fraction
    range_high: Fraction
    # integer view used by the finite-precision coder
    count: int
    cum_low: int


class ProbabilityModel:
    """Static model that partitions [0, 1) into one half-open range per symbol.

    Probabilities are exact rationals count/total.  Entries are laid out in
    descending probability with ties broken by ascending symbol value, and
    ranges are assigned cumulatively from 0 in that order.
    """

    def __init__(self, table: FrequencyTable):
        self.table = table
        self.total = table.total
        entries = []
        cum = 0
        for sym, n in table.ordered():
            entries.append(
                ModelEntry(
                    symbol=sym,
                    probability=Fraction(n, self.total),
                    range_low=Fraction(cum, self.total),
                    range_high=Fraction(cum + n, self.total),
                    count=n,
                    cum_low=cum,
                )
            )
            cum += n
        self.entries: tuple[ModelEntry, ...] = tuple(entries)
        self._index = {e.symbol: i for i, e in enumerate(entries)}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, symbol) -> bool:
        return symbol in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbabilityModel):
            return NotImplemented
        return self.entries == other.entries

    def index(self, symbol: int) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def entry(self, symbol: int) -> ModelEntry:
        return self.entries[self.index(symbol)]

    def probability(self, symbol: int) -> Fraction:
        return self.entry(symbol).probability

    @property
    def symbols(self) -> list[int]:
        return [e.symbol for e in self.entries]


def to_probability_model(table: FrequencyTable) -> ProbabilityModel:
    return ProbabilityModel(table)


def lookup_range(model: ProbabilityModel, symbol: int) -> tuple[Fraction, Fraction]:
    e = model.entry(symbol)
    return e.range_low, e.range_high
