"""JPEG-style lossy transform chain feeding the entropy backends.

Encoder order: level shift, 8x8 blocking, DCT, quantization, zigzag,
DPCM of the DC terms, run-length coding of the AC terms, symbol mapping,
entropy coding.  The decoder runs the same steps backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .codec import decode_symbols, encode_symbols
from .container import SOURCE_PIPELINE, read_container, write_container
from .errors import BadContainer, ShapeError

N = 8
LEVEL_SHIFT = 128

# ITU-T T.81 Annex K luminance table
JPEG_LUMA = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)
DEFAULT_QUALITY = 50


@dataclass
class ImagePlane:
    """One 8-bit channel, samples stored row-major as a (height, width) array."""

    width: int
    height: int
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.uint8)
        if self.samples.shape != (self.height, self.width):
            if self.samples.size != self.width * self.height:
                raise ShapeError(
                    f"{self.samples.size} samples for a {self.width}x{self.height} plane"
                )
            self.samples = self.samples.reshape(self.height, self.width)

    @classmethod
    def from_array(cls, arr) -> "ImagePlane":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(arr.shape[1], arr.shape[0], arr)

    def tobytes(self) -> bytes:
        return self.samples.tobytes()

    def __eq__(self, other):
        if not isinstance(other, ImagePlane):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and np.array_equal(
            self.samples, other.samples
        )


# -- colour ---------------------------------------------------------------

_RGB2YCC = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_YCC2RGB = np.array(
    [
        [1.0, 0.0, 1.402],
        [1.0, -0.344136, -0.714136],
        [1.0, 1.772, 0.0],
    ]
)


def _to_u8(x: np.ndarray) -> np.ndarray:
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def _stack(a, b, c) -> np.ndarray:
    planes = [p.samples if isinstance(p, ImagePlane) else np.asarray(p) for p in (a, b, c)]
    if not (planes[0].shape == planes[1].shape == planes[2].shape) or planes[0].ndim != 2:
        raise ShapeError(f"channel shapes differ: {[p.shape for p in planes]}")
    return np.stack(planes, axis=-1).astype(np.float64)


def rgb_to_ycbcr(r, g, b) -> tuple[ImagePlane, ImagePlane, ImagePlane]:
    """BT.601 full-range conversion, rounded and clamped to 8 bits."""
    ycc = _stack(r, g, b) @ _RGB2YCC.T
    ycc[..., 1:] += 128
    out = _to_u8(ycc)
    return tuple(ImagePlane.from_array(out[..., i]) for i in range(3))


def ycbcr_to_rgb(y, cb, cr) -> tuple[ImagePlane, ImagePlane, ImagePlane]:
    ycc = _stack(y, cb, cr)
    ycc[..., 1:] -= 128
    out = _to_u8(ycc @ _YCC2RGB.T)
    return tuple(ImagePlane.from_array(out[..., i]) for i in range(3))


# -- blocking -------------------------------------------------------------

def split_blocks(plane: ImagePlane) -> np.ndarray:
    """Row-major (count, 8, 8) float blocks; ragged edges replicate the last row/column."""
    h, w = plane.height, plane.width
    ph, pw = -h % N, -w % N
    a = np.pad(plane.samples, ((0, ph), (0, pw)), mode="edge").astype(np.float64)
    by, bx = a.shape[0] // N, a.shape[1] // N
    return a.reshape(by, N, bx, N).swapaxes(1, 2).reshape(by * bx, N, N)


def merge_blocks(blocks: np.ndarray, width: int, height: int) -> np.ndarray:
    by, bx = -(-height // N), -(-width // N)
    blocks = np.asarray(blocks)
    if blocks.shape != (by * bx, N, N):
        raise ShapeError(f"{blocks.shape[0]} blocks cannot tile {width}x{height}")
    a = blocks.reshape(by, bx, N, N).swapaxes(1, 2).reshape(by * N, bx * N)
    return a[:height, :width]


# -- transform ------------------------------------------------------------

def _dct_matrix() -> np.ndarray:
    k = np.arange(N)
    m = np.cos((2 * k[None, :] + 1) * k[:, None] * np.pi / (2 * N)) / 2
    m[0] /= np.sqrt(2)
    return m


DCT = _dct_matrix()


def fdct(block: np.ndarray) -> np.ndarray:
    """Orthonormal 2-D DCT-II of one block or a (count, 8, 8) stack.

    Input is expected already level shifted.
    """
    return DCT @ np.asarray(block, dtype=np.float64) @ DCT.T


def idct(coeffs: np.ndarray) -> np.ndarray:
    return DCT.T @ np.asarray(coeffs, dtype=np.float64) @ DCT


# -- quantization ---------------------------------------------------------

def quality_table(quality: int = DEFAULT_QUALITY) -> np.ndarray:
    """Luminance table scaled IJG-style; steps clamped to [1, 255]."""
    if not 1 <= quality <= 100:
        raise ValueError(f"quality must be in [1, 100], got {quality}")
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    return np.clip((JPEG_LUMA * scale + 50) // 100, 1, 255)


def round_half_away(x: np.ndarray) -> np.ndarray:
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def quantize(coeffs: np.ndarray, qtable: np.ndarray) -> np.ndarray:
    if np.any(np.asarray(qtable) < 1):
        raise ValueError("quantization steps must be >= 1")
    return round_half_away(np.asarray(coeffs, dtype=np.float64) / qtable).astype(np.int64)


def dequantize(q: np.ndarray, qtable: np.ndarray) -> np.ndarray:
    return (np.asarray(q) * qtable).astype(np.float64)


# -- scan order -----------------------------------------------------------

def _zigzag_order() -> np.ndarray:
    cells = sorted(
        ((r, c) for r in range(N) for c in range(N)),
        key=lambda rc: (rc[0] + rc[1], rc[0] if (rc[0] + rc[1]) % 2 else rc[1]),
    )
    return np.array([r * N + c for r, c in cells])


ZIGZAG = _zigzag_order()
UNZIGZAG = np.argsort(ZIGZAG)


def zigzag(block: np.ndarray) -> np.ndarray:
    """(..., 8, 8) -> (..., 64) in zigzag order; index 0 is DC."""
    b = np.asarray(block)
    return b.reshape(*b.shape[:-2], N * N)[..., ZIGZAG]


def inverse_zigzag(vec: np.ndarray) -> np.ndarray:
    v = np.asarray(vec)
    return v[..., UNZIGZAG].reshape(*v.shape[:-1], N, N)


# -- DPCM / RLC -----------------------------------------------------------

def dpcm_encode(values: Sequence[int]) -> list[int]:
    out, prev = [], 0
    for v in values:
        out.append(int(v) - prev)
        prev = int(v)
    return out


def dpcm_decode(diffs: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for d in diffs:
        acc += int(d)
        out.append(acc)
    return out


EOB = (0, 0)
MAX_RUN = 255
AC_LEN = N * N - 1


def rlc_encode(ac: Sequence[int]) -> list[tuple[int, int]]:
    """(zero_run, value) pairs for the nonzero entries, then EOB."""
    if len(ac) != AC_LEN:
        raise ShapeError(f"expected {AC_LEN} AC coefficients, got {len(ac)}")
    out, run = [], 0
    for v in ac:
        v = int(v)
        if v == 0:
            run += 1
        else:
            out.append((run, v))
            run = 0
    out.append(EOB)
    return out


def rlc_decode(runs: Sequence[tuple[int, int]]) -> list[int]:
    out = []
    for run, v in runs:
        if (run, v) == EOB:
            break
        out.extend([0] * run)
        out.append(v)
    else:
        raise ShapeError("run list is missing its EOB marker")
    if len(out) > AC_LEN:
        raise ShapeError(f"runs expand to {len(out)} > {AC_LEN} coefficients")
    out.extend([0] * (AC_LEN - len(out)))
    return out


@dataclass
class CoefficientStream:
    dc_diffs: list[int] = field(default_factory=list)
    ac_runs: list[list[tuple[int, int]]] = field(default_factory=list)

    def __len__(self):
        return len(self.dc_diffs)


def coefficients_to_stream(qblocks: np.ndarray) -> CoefficientStream:
    vecs = zigzag(qblocks)
    return CoefficientStream(
        dpcm_encode(vecs[:, 0].tolist()),
        [rlc_encode(v) for v in vecs[:, 1:].tolist()],
    )


def stream_to_coefficients(stream: CoefficientStream) -> np.ndarray:
    dc = dpcm_decode(stream.dc_diffs)
    vecs = np.array([[d] + rlc_decode(r) for d, r in zip(dc, stream.ac_runs)], dtype=np.int64)
    return inverse_zigzag(vecs.reshape(-1, N * N))


# -- symbol mapping -------------------------------------------------------
#
# One 16-bit alphabet: values map n -> 2n (n >= 0), 2|n| - 1 (n < 0) and stay
# below RUN_BASE; RUN_BASE + r encodes a zero run r; EOB_SYMBOL closes a block.
# The stream opens with the quality setting so the decoder can rebuild the table.

EOB_SYMBOL = 0xFFFF
RUN_BASE = EOB_SYMBOL - (MAX_RUN + 1)
MAX_VALUE_SYMBOL = RUN_BASE - 1


def signed_to_symbol(n: int) -> int:
    s = 2 * n if n >= 0 else -2 * n - 1
    if s > MAX_VALUE_SYMBOL:
        raise ValueError(f"coefficient {n} outside the symbol alphabet")
    return s


def symbol_to_signed(s: int) -> int:
    return s >> 1 if s % 2 == 0 else -((s + 1) >> 1)


def stream_to_symbols(stream: CoefficientStream, quality: int) -> list[int]:
    out = [quality]
    for dc, runs in zip(stream.dc_diffs, stream.ac_runs):
        out.append(signed_to_symbol(dc))
        for run, v in runs:
            if (run, v) == EOB:
                out.append(EOB_SYMBOL)
                break
            out.append(RUN_BASE + run)
            out.append(signed_to_symbol(v))
    return out


def symbols_to_stream(symbols: Sequence[int], blocks: int) -> tuple[int, CoefficientStream]:
    it = iter(symbols)
    try:
        quality = next(it)
        stream = CoefficientStream()
        for _ in range(blocks):
            dc = next(it)
            if dc > MAX_VALUE_SYMBOL:
                raise BadContainer(f"expected a DC symbol, got {dc}")
            stream.dc_diffs.append(symbol_to_signed(dc))
            runs = []
            while True:
                s = next(it)
                if s == EOB_SYMBOL:
                    runs.append(EOB)
                    break
                if s < RUN_BASE:
                    raise BadContainer(f"expected a run or EOB symbol, got {s}")
                v = next(it)
                if v > MAX_VALUE_SYMBOL or v == 0:
                    raise BadContainer(f"expected a nonzero value symbol, got {v}")
                runs.append((s - RUN_BASE, symbol_to_signed(v)))
            stream.ac_runs.append(runs)
    except StopIteration:
        raise BadContainer("symbol stream ends mid-block") from None
    if next(it, None) is not None:
        raise BadContainer("symbols left over after the last block")
    return quality, stream


# -- whole chain ----------------------------------------------------------

def block_count(width: int, height: int) -> int:
    return -(-width // N) * -(-height // N)


def plane_to_symbols(plane: ImagePlane, quality: int = DEFAULT_QUALITY) -> list[int]:
    qtable = quality_table(quality)
    blocks = split_blocks(plane) - LEVEL_SHIFT
    q = quantize(fdct(blocks), qtable)
    return stream_to_symbols(coefficients_to_stream(q), quality)


def symbols_to_plane(symbols: Sequence[int], width: int, height: int) -> ImagePlane:
    quality, stream = symbols_to_stream(symbols, block_count(width, height))
    try:
        qtable = quality_table(quality)
    except ValueError as e:
        raise BadContainer(str(e)) from None
    coeffs = dequantize(stream_to_coefficients(stream), qtable)
    pixels = idct(coeffs) + LEVEL_SHIFT
    return ImagePlane(width, height, _to_u8(merge_blocks(pixels, width, height)))


def compress_plane(plane: ImagePlane, backend="huffman", quality: int = DEFAULT_QUALITY) -> bytes:
    symbols = plane_to_symbols(plane, quality)
    c = encode_symbols(symbols, backend, source="pipeline", width=plane.width, height=plane.height)
    return write_container(c)


def decompress_plane(data: bytes) -> ImagePlane:
    c = read_container(data)
    if c.source != SOURCE_PIPELINE:
        raise BadContainer("container does not hold a pipeline stream")
    return symbols_to_plane(decode_symbols(c), c.width, c.height)


def psnr(a: ImagePlane, b: ImagePlane) -> float:
    diff = a.samples.astype(np.float64) - b.samples.astype(np.float64)
    mse = float(np.mean(diff**2))
    if mse == 0:
        return float("inf")
    return 10 * np.log10(255**2 / mse)


# -- raw source -----------------------------------------------------------

def compress_raw(plane: ImagePlane, backend="huffman") -> bytes:
    """Entropy-code the pixel bytes directly, no transform."""
    symbols = plane.samples.ravel().tolist()
    c = encode_symbols(symbols, backend, source="raw", width=plane.width, height=plane.height)
    return write_container(c)


def decompress_raw(data: bytes) -> ImagePlane:
    if read_container(data).source == SOURCE_PIPELINE:
        raise BadContainer("container does not hold a raw stream")
    return decompress(data)


def compress(plane: ImagePlane, backend="huffman", source="raw", quality=DEFAULT_QUALITY) -> bytes:
    if source == "raw":
        return compress_raw(plane, backend)
    if source == "pipeline":
        return compress_plane(plane, backend, quality)
    raise ValueError(f"unknown source {source!r}")


def decompress(data: bytes) -> ImagePlane:
    c = read_container(data)
    symbols = decode_symbols(c)
    if c.source == SOURCE_PIPELINE:
        return symbols_to_plane(symbols, c.width, c.height)
    if len(symbols) != c.width * c.height or max(symbols) > 255:
        raise BadContainer("raw container does not describe an 8-bit plane")
    return ImagePlane(c.width, c.height, np.array(symbols, dtype=np.uint8))
