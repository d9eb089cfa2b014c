"""MSB-first bit packing shared by the coders and the container."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import OutOfBits


def _pack(bitstring: str) -> bytes:
    if not bitstring:
        return b""
    pad = -len(bitstring) % 8
    nbytes = (len(bitstring) + pad) // 8
    return (int(bitstring, 2) << pad).to_bytes(nbytes, "big")


def _unpack(payload: bytes, bit_length: int) -> str:
    if bit_length == 0:
        return ""
    bits = bin(int.from_bytes(payload, "big"))[2:].zfill(8 * len(payload))
    return bits[:bit_length]


@dataclass(frozen=True)
class BitSequence:
    """Packed bits; the final byte is zero-padded on the right."""

    payload: bytes
    bit_length: int

    def __post_init__(self):
        n = len(self.payload)
        if self.bit_length < 0 or not (self.bit_length <= 8 * n < self.bit_length + 8):
            raise ValueError(f"{n} payload bytes cannot hold exactly {self.bit_length} bits")
        pad = 8 * n - self.bit_length
        if pad and self.payload[-1] & ((1 << pad) - 1):
            raise ValueError("padding bits must be zero")

    @classmethod
    def from_bitstring(cls, bits: str) -> "BitSequence":
        return cls(_pack(bits), len(bits))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitSequence":
        return cls.from_bitstring("".join("1" if b else "0" for b in bits))

    def to_bitstring(self) -> str:
        return _unpack(self.payload, self.bit_length)

    def to_bits(self) -> list[int]:
        return [1 if c == "1" else 0 for c in self.to_bitstring()]

    def __len__(self) -> int:
        return self.bit_length


class BitWriter:
    def __init__(self):
        self._chunks: list[str] = []
        self.bit_length = 0

    def write_bits(self, bits: Iterable[int]) -> "BitWriter":
        chunk = []
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b!r}")
            chunk.append("1" if b else "0")
        return self.write_bitstring("".join(chunk))

    def write_bitstring(self, bits: str) -> "BitWriter":
        self._chunks.append(bits)
        self.bit_length += len(bits)
        return self

    def write_uint(self, value: int, width: int) -> "BitWriter":
        return self.write_bitstring(format(value, f"0{width}b") if width else "")

    def finalize(self) -> BitSequence:
        return BitSequence.from_bitstring("".join(self._chunks))


def write_bits(writer: BitWriter, bits: Iterable[int]) -> BitWriter:
    return writer.write_bits(bits)


class BitReader:
    def __init__(self, seq: BitSequence):
        self._bits = seq.to_bitstring()
        self.pos = 0

    @property
    def remaining(self) -> int:
        return len(self._bits) - self.pos

    def read_bits(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError("bit count must be non-negative")
        if n > self.remaining:
            raise OutOfBits(f"requested {n} bits, {self.remaining} remain")
        out = self._bits[self.pos:self.pos + n]
        self.pos += n
        return [1 if c == "1" else 0 for c in out]

    def read_bit(self) -> int:
        return self.read_bits(1)[0]


def read_bits(reader: BitReader, n: int) -> list[int]:
    return reader.read_bits(n)
