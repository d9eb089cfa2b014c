"""Entropy backends behind one symbols <-> Container interface."""

from __future__ import annotations

from typing import Sequence

from .arith import arith_decode, arith_encode
from .container import CODEC_ARITHMETIC, CODEC_HUFFMAN, Container, codec_id, source_id
from .errors import BadContainer
from .huffman import build_tree, derive_codebook, huffman_decode, huffman_encode
from .symbol_model import build_frequency_table, to_probability_model


def encode_symbols(symbols: Sequence[int], codec, *, source="raw", width=0, height=0) -> Container:
    """Two-pass static coding: count, build the model, encode."""
    cid = codec_id(codec)
    table = build_frequency_table(symbols)
    if cid == CODEC_HUFFMAN:
        payload = huffman_encode(symbols, derive_codebook(build_tree(table)))
    else:
        payload = arith_encode(symbols, to_probability_model(table))
    return Container(cid, source_id(source), width, height, len(symbols), table, payload)


def decode_symbols(c: Container) -> list[int]:
    if c.codec == CODEC_HUFFMAN:
        return huffman_decode(c.payload, build_tree(c.table), c.symbol_count)
    if c.codec == CODEC_ARITHMETIC:
        return arith_decode(c.payload, to_probability_model(c.table), c.symbol_count)
    raise BadContainer(f"unknown codec id {c.codec}")
