"""Static Huffman coding: tree construction, codebook derivation, encode/decode."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .bitio import BitSequence
from .errors import InvalidCodeword, TrailingGarbage, TruncatedStream, UnknownSymbol
from .symbol_model import FrequencyTable, build_frequency_table


@dataclass(eq=False)
class Node:
    weight: int
    order: int  # creation index, the secondary key of the merge queue
    symbol: Optional[int] = None
    zero: Optional["Node"] = None
    one: Optional["Node"] = None

    @property
    def is_leaf(self) -> bool:
        return self.symbol is not None


@dataclass(eq=False)
class HuffmanTree:
    root: Node
    table: FrequencyTable
    _flat: tuple = field(default=None, repr=False)

    def leaves(self) -> list[Node]:
        out, stack = [], [self.root]
        while stack:
            n = stack.pop()
            if n.is_leaf:
                out.append(n)
            else:
                stack.extend(c for c in (n.one, n.zero) if c is not None)
        return out

    def depths(self) -> dict[int, int]:
        """Leaf depth per symbol; a lone leaf counts as depth 1."""
        if self.root.is_leaf:
            return {self.root.symbol: 1}
        out = {}
        stack = [(self.root, 0)]
        while stack:
            n, d = stack.pop()
            if n.is_leaf:
                out[n.symbol] = d
            else:
                stack.append((n.zero, d + 1))
                stack.append((n.one, d + 1))
        return out

    def flat(self):
        """Arrays (zero_child, one_child, leaf_symbol) indexed by node id, root = 0."""
        if self._flat is None:
            zero, one, sym = [], [], []

            def add(node):
                i = len(sym)
                zero.append(-1)
                one.append(-1)
                sym.append(node.symbol if node.is_leaf else -1)
                return i

            if self.root.is_leaf:
                # lone symbol: the root is a virtual node whose 0-edge is the leaf
                add(Node(self.root.weight, -1))
                zero[0] = add(self.root)
            else:
                stack = [(self.root, add(self.root))]
                while stack:
                    node, i = stack.pop()
                    for child, arr in ((node.zero, zero), (node.one, one)):
                        j = add(child)
                        arr[i] = j
                        if not child.is_leaf:
                            stack.append((child, j))
            self._flat = (zero, one, sym)
        return self._flat


def build_tree(table: FrequencyTable) -> HuffmanTree:
    heap = []
    order = 0
    for sym, n in table.ordered():
        heap.append((n, order, Node(n, order, symbol=sym)))
        order += 1
    heapq.heapify(heap)
    while len(heap) > 1:
        wa, _, a = heapq.heappop(heap)
        wb, _, b = heapq.heappop(heap)
        # heavier child takes bit 1; on equal weight the earlier-created one does
        if wa == wb:
            one, zero = a, b
        else:
            one, zero = b, a
        node = Node(wa + wb, order, zero=zero, one=one)
        heapq.heappush(heap, (node.weight, order, node))
        order += 1
    return HuffmanTree(heap[0][2], table)


@dataclass(frozen=True)
class HuffmanCodebook:
    codes: dict  # symbol -> str of '0'/'1'

    @property
    def lengths(self) -> dict[int, int]:
        return {s: len(c) for s, c in self.codes.items()}

    def __getitem__(self, symbol: int) -> str:
        try:
            return self.codes[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def __len__(self) -> int:
        return len(self.codes)


def derive_codebook(tree: HuffmanTree) -> HuffmanCodebook:
    if tree.root.is_leaf:
        return HuffmanCodebook({tree.root.symbol: "0"})
    codes = {}
    stack = [(tree.root, "")]
    while stack:
        n, prefix = stack.pop()
        if n.is_leaf:
            codes[n.symbol] = prefix
        else:
            stack.append((n.zero, prefix + "0"))
            stack.append((n.one, prefix + "1"))
    return HuffmanCodebook(codes)


def kraft_sum(lengths: Iterable[int]) -> Fraction:
    return sum(Fraction(1, 2**n) for n in lengths)


def average_length(codebook: HuffmanCodebook, table: FrequencyTable) -> float:
    return sum(table[s] * len(c) for s, c in codebook.codes.items()) / table.total


def entropy(table: FrequencyTable) -> float:
    t = table.total
    return -sum(n / t * math.log2(n / t) for n in table.entries.values())


def huffman_encode(symbols: Iterable[int], codebook: HuffmanCodebook) -> BitSequence:
    codes = codebook.codes
    try:
        bits = "".join([codes[s] for s in symbols])
    except KeyError as e:
        raise UnknownSymbol(e.args[0]) from None
    return BitSequence.from_bitstring(bits)


def huffman_decode(bits: BitSequence, tree: HuffmanTree, count: int) -> list[int]:
    zero, one, sym = tree.flat()
    stream = bits.to_bitstring()
    out = []
    append = out.append
    node = 0
    pos = 0
    n = len(stream)
    left = count
    while left:
        if pos >= n:
            raise TruncatedStream(f"bits exhausted after {count - left} of {count} symbols")
        node = one[node] if stream[pos] == "1" else zero[node]
        pos += 1
        if node < 0:
            raise InvalidCodeword(f"bit {pos - 1} does not continue any codeword")
        s = sym[node]
        if s >= 0:
            append(s)
            left -= 1
            node = 0
    if pos != n:
        raise TrailingGarbage(f"{n - pos} unread bits after {count} symbols")
    return out


def encode_message(symbols: Sequence[int], table: Optional[FrequencyTable] = None):
    """Build table, tree and codebook, return (table, bits)."""
    table = table or build_frequency_table(symbols)
    return table, huffman_encode(symbols, derive_codebook(build_tree(table)))
