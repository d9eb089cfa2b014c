"""Binary PGM (P5) and PPM (P6) reading and writing, maxval 255 only."""

from __future__ import annotations

import numpy as np

from .errors import TruncatedFile, UnsupportedDepth, UnsupportedFormat
from .pipeline import ImagePlane

_WS = b" \t\r\n\v\f"


def _header(data: bytes, magic: bytes) -> tuple[int, int, int]:
    """Return (width, height, raster offset)."""
    if data[:2] != magic:
        raise UnsupportedFormat(f"expected {magic.decode()} magic, got {data[:2]!r}")
    pos, fields = 2, []
    while len(fields) < 3:
        if pos >= len(data):
            raise TruncatedFile("header ends early")
        ch = data[pos:pos + 1]
        if ch in _WS:
            pos += 1
        elif ch == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise TruncatedFile("comment runs to end of file")
            pos = nl + 1
        else:
            start = pos
            while pos < len(data) and data[pos:pos + 1] not in _WS and data[pos:pos + 1] != b"#":
                pos += 1
            tok = data[start:pos]
            if not tok.isdigit():
                raise UnsupportedFormat(f"bad header token {tok!r}")
            fields.append(int(tok))
    width, height, maxval = fields
    if maxval != 255:
        raise UnsupportedDepth(f"maxval {maxval} (only 255 is supported)")
    if pos >= len(data) or data[pos:pos + 1] not in _WS:
        raise TruncatedFile("missing whitespace before raster")
    return width, height, pos + 1


def _raster(data: bytes, offset: int, n: int) -> np.ndarray:
    if len(data) - offset < n:
        raise TruncatedFile(f"raster has {len(data) - offset} bytes, expected {n}")
    return np.frombuffer(data, dtype=np.uint8, count=n, offset=offset)


def parse_pgm(data: bytes) -> ImagePlane:
    w, h, off = _header(data, b"P5")
    return ImagePlane(w, h, _raster(data, off, w * h).reshape(h, w).copy())


def parse_ppm(data: bytes) -> tuple[ImagePlane, ImagePlane, ImagePlane]:
    w, h, off = _header(data, b"P6")
    rgb = _raster(data, off, 3 * w * h).reshape(h, w, 3)
    return tuple(ImagePlane(w, h, rgb[..., i].copy()) for i in range(3))


def write_pgm(plane: ImagePlane) -> bytes:
    return b"P5\n%d %d\n255\n" % (plane.width, plane.height) + plane.tobytes()


def write_ppm(r: ImagePlane, g: ImagePlane, b: ImagePlane) -> bytes:
    rgb = np.stack([r.samples, g.samples, b.samples], axis=-1)
    return b"P6\n%d %d\n255\n" % (r.width, r.height) + rgb.astype(np.uint8).tobytes()


def read_image(path) -> ImagePlane:
    with open(path, "rb") as f:
        return parse_pgm(f.read())
