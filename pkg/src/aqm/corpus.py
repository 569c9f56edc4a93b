"""Synthetic test images, generated rather than shipped."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .image import Image

DEFAULT_SIZE = 512
DEFAULT_SEED = 42


def zone_plate(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> Image:
    # local frequency reaches ~0.4 cycles/pixel at the edge
    c = (np.arange(size) - size / 2 + 0.5) / size
    r2 = np.add.outer(c * c, c * c)
    return Image.from_float(128 + 100 * np.cos(np.pi * 0.8 * size * r2))


def diagonal_gradient(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> Image:
    idx = np.arange(size, dtype=np.float64)
    ramp = np.add.outer(idx, idx) / (2 * (size - 1))
    # mild texture so the gradient is not trivially DC-only per block
    ripple = 6 * np.sin(2 * np.pi * np.add.outer(idx, 2 * idx) / 37.0)
    return Image.from_float(16 + 220 * ramp + ripple)


def band_limited_noise(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> Image:
    rng = np.random.default_rng(seed)
    white = rng.standard_normal((size, size))
    f = np.fft.fftfreq(size)
    radius = np.sqrt(np.add.outer(f * f, f * f))
    # 1/f-like spectrum with a soft cutoff: most energy at low/mid frequencies
    shaping = 1.0 / np.maximum(radius, 1.0 / size) * np.exp(-((radius / 0.25) ** 2))
    noise = np.real(np.fft.ifft2(np.fft.fft2(white) * shaping))
    noise = (noise - noise.mean()) / noise.std()
    return Image.from_float(128 + 40 * noise)


def checkerboard(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED, square: int = 12) -> Image:
    idx = np.arange(size) // square
    board = (np.add.outer(idx, idx) % 2).astype(np.float64)
    return Image.from_float(48 + 160 * board)


GENERATORS = {
    "zoneplate": zone_plate,
    "gradient": diagonal_gradient,
    "noise": band_limited_noise,
    "checker": checkerboard,
}


def generate(name: str, size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> Image:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise DomainError(f"unknown corpus image {name!r}; choose from {sorted(GENERATORS)}") from None
    return gen(size, seed)


def corpus(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> dict[str, Image]:
    return {name: gen(size, seed) for name, gen in GENERATORS.items()}
