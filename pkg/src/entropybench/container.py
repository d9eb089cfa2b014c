"""The ENTC container: header, serialized frequency table, entropy payload.

Layout, big-endian throughout::

    magic "ENTC" | version u8 | codec u8 | source u8 | width u32 | height u32
    | symbol_count u64 | model_entry_count u16 | (symbol u16, count u32) * n
    | payload_bit_length u64 | payload bytes
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .bitio import BitSequence
from .errors import BadContainer
from .symbol_model import FrequencyTable

MAGIC = b"ENTC"
VERSION = 1

CODEC_HUFFMAN = 0
CODEC_ARITHMETIC = 1
CODECS = {"huffman": CODEC_HUFFMAN, "arithmetic": CODEC_ARITHMETIC, "arith": CODEC_ARITHMETIC}
CODEC_NAMES = {CODEC_HUFFMAN: "huffman", CODEC_ARITHMETIC: "arithmetic"}

SOURCE_RAW = 0
SOURCE_PIPELINE = 1
SOURCES = {"raw": SOURCE_RAW, "pipeline": SOURCE_PIPELINE}
SOURCE_NAMES = {v: k for k, v in SOURCES.items()}

_HEAD = struct.Struct(">4sBBBIIQH")
_ENTRY = struct.Struct(">HI")
_BITLEN = struct.Struct(">Q")


@dataclass(frozen=True)
class Container:
    codec: int
    source: int
    width: int
    height: int
    symbol_count: int
    table: FrequencyTable
    payload: BitSequence
    version: int = VERSION

    @property
    def codec_name(self) -> str:
        return CODEC_NAMES[self.codec]

    @property
    def source_name(self) -> str:
        return SOURCE_NAMES[self.source]


def codec_id(name) -> int:
    if isinstance(name, int):
        if name not in CODEC_NAMES:
            raise BadContainer(f"unknown codec id {name}")
        return name
    try:
        return CODECS[name]
    except KeyError:
        raise BadContainer(f"unknown codec {name!r}") from None


def source_id(name) -> int:
    if isinstance(name, int):
        if name not in SOURCE_NAMES:
            raise BadContainer(f"unknown source id {name}")
        return name
    try:
        return SOURCES[name]
    except KeyError:
        raise BadContainer(f"unknown source {name!r}") from None


def write_container(c: Container) -> bytes:
    if c.version != VERSION:
        raise BadContainer(f"cannot write version {c.version}")
    codec_id(c.codec)
    source_id(c.source)
    entries = sorted(c.table.entries.items())
    if len(entries) > 0xFFFF:
        raise BadContainer("too many model entries")
    parts = [
        _HEAD.pack(MAGIC, c.version, c.codec, c.source, c.width, c.height,
                   c.symbol_count, len(entries))
    ]
    for sym, n in entries:
        if n > 0xFFFFFFFF:
            raise BadContainer(f"count {n} for symbol {sym} does not fit u32")
        parts.append(_ENTRY.pack(sym, n))
    parts.append(_BITLEN.pack(c.payload.bit_length))
    parts.append(c.payload.payload)
    return b"".join(parts)


def read_container(data: bytes) -> Container:
    if len(data) < _HEAD.size:
        raise BadContainer("container shorter than its header")
    magic, version, codec, source, width, height, count, n_entries = _HEAD.unpack_from(data)
    if magic != MAGIC:
        raise BadContainer(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadContainer(f"unsupported version {version}")
    if codec not in CODEC_NAMES:
        raise BadContainer(f"unknown codec id {codec}")
    if source not in SOURCE_NAMES:
        raise BadContainer(f"unknown source id {source}")
    if n_entries == 0:
        raise BadContainer("empty frequency table")
    off = _HEAD.size
    end = off + n_entries * _ENTRY.size + _BITLEN.size
    if len(data) < end:
        raise BadContainer("container truncated inside the model")
    counts = {}
    for _ in range(n_entries):
        sym, n = _ENTRY.unpack_from(data, off)
        off += _ENTRY.size
        if n == 0 or sym in counts:
            raise BadContainer(f"invalid model entry for symbol {sym}")
        counts[sym] = n
    (bit_length,) = _BITLEN.unpack_from(data, off)
    off += _BITLEN.size
    payload = data[off:]
    if len(payload) != (bit_length + 7) // 8:
        raise BadContainer(f"payload is {len(payload)} bytes, bit length says {bit_length} bits")
    table = FrequencyTable(counts)
    if table.total != count:
        raise BadContainer(f"model counts sum to {table.total}, header says {count} symbols")
    try:
        bits = BitSequence(bytes(payload), bit_length)
    except ValueError as e:
        raise BadContainer(str(e)) from None
    return Container(codec, source, width, height, count, table, bits, version)
