"""8-bit grayscale images, PGM I/O and resampling."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ParseError


@dataclass(frozen=True, eq=False)
class Image:
    samples: np.ndarray  # (height, width) uint8, row-major

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 2:
            raise DomainError(f"image must be 2-D, got shape {s.shape}")
        if s.dtype != np.uint8:
            if s.size and (s.min() < 0 or s.max() > 255):
                raise DomainError("samples must lie in [0, 255]")
            s = s.astype(np.uint8)
        s = np.ascontiguousarray(s)
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.samples.shape

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return np.array_equal(self.samples, other.samples)

    @classmethod
    def from_float(cls, values) -> "Image":
        """Round to nearest and clamp to the 8-bit range."""
        return cls(np.clip(np.floor(np.asarray(values) + 0.5), 0, 255).astype(np.uint8))


def _pgm_tokens(data: bytes, count: int):
    """Return the first ``count`` header tokens and the offset just past them."""
    tokens, pos = [], 0
    while len(tokens) < count:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ParseError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos + 1  # exactly one whitespace byte precedes the raster


def read_pgm(path) -> Image:
    data = Path(path).read_bytes()
    tokens, offset = _pgm_tokens(data, 4)
    if tokens[0] != b"P5":
        raise ParseError(f"not a binary PGM (magic {tokens[0]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise ParseError(f"bad PGM header: {exc}") from exc
    if maxval != 255:
        raise ParseError(f"only 8-bit PGM is supported (maxval {maxval})")
    raster = data[offset:offset + width * height]
    if len(raster) != width * height:
        raise ParseError("truncated PGM raster")
    return Image(np.frombuffer(raster, dtype=np.uint8).reshape(height, width))


def write_pgm(path, image: Image):
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + image.samples.tobytes())


def downsample_box(image: Image, width: int, height: int) -> Image:
    """Box-average by integer factors."""
    if width == image.width and height == image.height:
        return image
    if image.width % width or image.height % height:
        raise DomainError(
            f"box downsampling needs integer factors: {image.width}x{image.height} -> {width}x{height}"
        )
    fy, fx = image.height // height, image.width // width
    s = image.samples.astype(np.float64).reshape(height, fy, width, fx)
    return Image.from_float(s.mean(axis=(1, 3)))


def upsample_bilinear(values: np.ndarray, width: int, height: int) -> np.ndarray:
    """Bilinear resize with pixel-center alignment; returns float64."""
    src = np.asarray(values, dtype=np.float64)
    h, w = src.shape
    if (h, w) == (height, width):
        return src.copy()
    if height < h or width < w:
        raise DomainError("bilinear upsampling cannot shrink an image")

    def axis(n_in, n_out):
        pos = (np.arange(n_out) + 0.5) * (n_in / n_out) - 0.5
        pos = np.clip(pos, 0, n_in - 1)
        i0 = np.floor(pos).astype(np.intp)
        i1 = np.minimum(i0 + 1, n_in - 1)
        return i0, i1, pos - i0

    y0, y1, wy = axis(h, height)
    x0, x1, wx = axis(w, width)
    rows = src[y0] * (1 - wy)[:, None] + src[y1] * wy[:, None]
    return rows[:, x0] * (1 - wx) + rows[:, x1] * wx
