"""Timed Huffman vs. arithmetic comparison over a ladder of image sizes.

Each (image, codec) cell gets one warmup encode and then ``repetitions``
timed encodes of the prepared symbol vector.  A timed encode covers what the
two-pass static coders must do per image: count symbols, build the
tree/model, emit the payload and serialize the container.
"""

from __future__ import annotations

import logging
import math
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .codec import encode_symbols
from .container import write_container
from .errors import BadConfig, DivisionByZero, IoError, ShapeError
from .netpbm import read_image
from .pipeline import DEFAULT_QUALITY, ImagePlane, plane_to_symbols

log = logging.getLogger(__name__)

DEFAULT_SIZES = (128, 256, 512, 1024, 2048)
CODECS = ("huffman", "arithmetic")
KINDS = ("gradient", "noise", "natural_mix")


@dataclass
class BenchConfig:
    sizes: Sequence[int] = DEFAULT_SIZES
    repetitions: int = 100
    source: str = "raw"
    images: Sequence[str] = ()
    kinds: Sequence[str] = ("natural_mix",)
    seed: int = 0
    quality: int = DEFAULT_QUALITY
    warmup: int = 1

    def __post_init__(self):
        self.sizes = tuple(int(s) for s in self.sizes)
        if any(s <= 0 for s in self.sizes):
            raise BadConfig(f"sizes must be positive: {self.sizes}")
        if self.repetitions < 1:
            raise BadConfig(f"repetitions must be >= 1, got {self.repetitions}")
        if self.source not in ("raw", "pipeline"):
            raise BadConfig(f"unknown source {self.source!r}")
        for k in self.kinds:
            if k not in KINDS:
                raise BadConfig(f"unknown image kind {k!r}")
        if not 1 <= self.quality <= 100:
            raise BadConfig(f"quality must be in [1, 100], got {self.quality}")


@dataclass
class BenchRecord:
    image_id: str
    size: int
    codec: str
    compression_ratio: Fraction
    compressed_bits: int
    times: list = field(default_factory=list)

    @property
    def time_median(self) -> float:
        return statistics.median(self.times)

    @property
    def time_mean(self) -> float:
        return statistics.fmean(self.times)


@dataclass(frozen=True)
class ComparisonRow:
    size: int
    image_id: str
    huffman_ratio: float
    arithmetic_ratio: float
    huffman_time: float
    arithmetic_time: float
    compression_pct: int
    time_pct: int


def compression_ratio(original_bits: int, compressed_bits: int) -> Fraction:
    if compressed_bits == 0:
        raise DivisionByZero("compressed size is zero bits")
    return Fraction(original_bits, compressed_bits)


def _exact(x) -> Fraction:
    # floats go through their shortest repr so 6.37 means 637/100
    return x if isinstance(x, (Fraction, int)) else Fraction(repr(float(x)))


def percent_gain(arithmetic, huffman) -> int:
    """trunc((A - H) / A * 100)."""
    a, h = _exact(arithmetic), _exact(huffman)
    if a == 0:
        raise DivisionByZero("arithmetic value is zero")
    return math.trunc((a - h) / a * 100)


def compare_records(huffman: BenchRecord, arithmetic: BenchRecord) -> ComparisonRow:
    if huffman.size != arithmetic.size:
        raise ShapeError(f"size mismatch: {huffman.size} vs {arithmetic.size}")
    if huffman.image_id != arithmetic.image_id:
        raise ShapeError(f"image mismatch: {huffman.image_id} vs {arithmetic.image_id}")
    h_t, a_t = huffman.time_median, arithmetic.time_median
    return ComparisonRow(
        size=huffman.size,
        image_id=huffman.image_id,
        huffman_ratio=float(huffman.compression_ratio),
        arithmetic_ratio=float(arithmetic.compression_ratio),
        huffman_time=h_t,
        arithmetic_time=a_t,
        compression_pct=percent_gain(arithmetic.compression_ratio, huffman.compression_ratio),
        time_pct=percent_gain(a_t, h_t),
    )


def generate_test_image(kind: str, size: int, seed: int = 0) -> ImagePlane:
    """Deterministic synthetic test image.

    natural_mix is a handful of low-frequency cosines (frequencies fixed in
    cycles per image, so larger images are smoother per block) plus mild
    seeded Gaussian noise.
    """
    if size < 8:
        raise BadConfig(f"image size must be >= 8, got {size}")
    rng = np.random.default_rng([seed, size, KINDS.index(kind) if kind in KINDS else -1])
    if kind == "gradient":
        row = np.floor(np.arange(size) * 255 / (size - 1) + 0.5)
        return ImagePlane.from_array(np.tile(row, (size, 1)).astype(np.uint8))
    if kind == "noise":
        return ImagePlane.from_array(rng.integers(0, 256, (size, size), dtype=np.uint8))
    if kind == "natural_mix":
        t = np.arange(size) / size
        field_ = np.zeros((size, size))
        for _ in range(5):
            fy, fx = rng.uniform(0.5, 3.0, 2)
            py, px = rng.uniform(0, 2 * np.pi, 2)
            amp = rng.uniform(0.5, 1.0)
            field_ += amp * np.outer(np.cos(2 * np.pi * fy * t + py), np.cos(2 * np.pi * fx * t + px))
        lo, hi = field_.min(), field_.max()
        field_ = 40 + 175 * (field_ - lo) / (hi - lo)
        img = field_ + rng.normal(0, 2.0, (size, size))
        return ImagePlane.from_array(np.clip(np.floor(img + 0.5), 0, 255).astype(np.uint8))
    raise BadConfig(f"unknown image kind {kind!r}")


def _images(config: BenchConfig):
    for size in config.sizes:
        for kind in config.kinds:
            yield f"{kind}-{size}-s{config.seed}", size, generate_test_image(kind, size, config.seed)
    for path in config.images:
        try:
            plane = read_image(path)
        except OSError as e:
            raise IoError(f"cannot read {path}: {e}") from e
        yield Path(path).stem, plane.width, plane


def source_symbols(plane: ImagePlane, source: str, quality: int = DEFAULT_QUALITY) -> list[int]:
    if source == "raw":
        return plane.samples.ravel().tolist()
    return plane_to_symbols(plane, quality)


def measure(symbols, codec, *, plane, source, repetitions, warmup=1, clock=time.perf_counter):
    """Return (container bytes, per-repetition seconds)."""
    def once():
        c = encode_symbols(symbols, codec, source=source, width=plane.width, height=plane.height)
        return write_container(c)

    blob = None
    for _ in range(warmup):
        blob = once()
    times = []
    for _ in range(repetitions):
        t0 = clock()
        blob = once()
        times.append(clock() - t0)
    return blob, times


def run_benchmark(config: BenchConfig, progress=None):
    """Return (records, comparison rows)."""
    records, rows = [], []
    for image_id, size, plane in _images(config):
        symbols = source_symbols(plane, config.source, config.quality)
        original_bits = plane.width * plane.height * 8
        pair = {}
        for codec in CODECS:
            blob, times = measure(
                symbols, codec, plane=plane, source=config.source,
                repetitions=config.repetitions, warmup=config.warmup,
            )
            bits = 8 * len(blob)
            rec = BenchRecord(image_id, size, codec, compression_ratio(original_bits, bits), bits, times)
            log.info("%s %s ratio=%.3f median=%.4fs", image_id, codec, rec.compression_ratio, rec.time_median)
            if progress:
                progress(rec)
            records.append(rec)
            pair[codec] = rec
        rows.append(compare_records(pair["huffman"], pair["arithmetic"]))
    return records, rows


CSV_COLUMNS = (
    "size", "image_id", "codec", "ratio", "time_median_s", "time_mean_s",
    "compression_pct", "time_pct",
)


def csv_rows(records: Sequence[BenchRecord], rows: Sequence[ComparisonRow]):
    """One CSV line per record; the percentage columns repeat the image's comparison row."""
    by_image = {(r.image_id, r.size): r for r in rows}
    for rec in records:
        row = by_image[(rec.image_id, rec.size)]
        yield {
            "size": rec.size,
            "image_id": rec.image_id,
            "codec": rec.codec,
            "ratio": f"{float(rec.compression_ratio):.6f}",
            "time_median_s": f"{rec.time_median:.6g}",
            "time_mean_s": f"{rec.time_mean:.6g}",
            "compression_pct": row.compression_pct,
            "time_pct": row.time_pct,
        }
