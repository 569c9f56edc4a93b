"""Desk-scale layered block-transform codec.

Each layer is tiled into 8x8 blocks, transformed with an orthonormal DCT-II,
quantized with the layer's QM at its QP, and reconstructed. Enhancement
layers predict from the bilinearly upsampled reconstruction of the layer
below and code only the residual. Rate is an entropy proxy, not a real
entropy coder.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .display import DisplayGeometry, adaptive_qm
from .errors import DomainError
from .image import Image, downsample_box, upsample_bilinear
from .metrics import PSNR_CAP, psnr
from .qm import QuantMatrix, default_inter_qm, default_intra_qm, flat_qm, round_half_away
from .scaling_list import encode_scaling_lists

B = 8
QP_RANGE = (0, 51)
QM_SOURCES = ("default", "default-inter", "adaptive", "flat")


def _dct_matrix(n: int = B) -> np.ndarray:
    k = np.arange(n)[:, None]
    x = np.arange(n)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(np.pi * (2 * x + 1) * k / (2 * n))
    c[0] /= np.sqrt(2.0)
    return c


DCT = _dct_matrix()
DCT.setflags(write=False)


def dct2(blocks: np.ndarray) -> np.ndarray:
    """Orthonormal 2-D DCT-II over the last two axes."""
    return DCT @ np.asarray(blocks, dtype=np.float64) @ DCT.T


def idct2(coeffs: np.ndarray) -> np.ndarray:
    return DCT.T @ np.asarray(coeffs, dtype=np.float64) @ DCT


def block_dct(block) -> np.ndarray:
    """Forward transform of 8-bit samples after removing the 128 offset."""
    block = np.asarray(block, dtype=np.float64)
    if block.shape[-2:] != (B, B):
        raise DomainError(f"block must be {B}x{B}, got {block.shape}")
    return dct2(block - 128.0)


def block_idct(coeffs) -> np.ndarray:
    return idct2(coeffs) + 128.0


def step_sizes(qm: QuantMatrix, qp: int) -> np.ndarray:
    """2^((qp-4)/6) scaled per position by qm/16."""
    if not QP_RANGE[0] <= qp <= QP_RANGE[1]:
        raise DomainError(f"qp {qp} outside {QP_RANGE}")
    return 2.0 ** ((qp - 4) / 6.0) * qm.entries.astype(np.float64) / 16.0


def quantize_block(coeffs, qm: QuantMatrix, qp: int) -> np.ndarray:
    """Nearest-rounding uniform quantizer; works on any (..., 8, 8) stack."""
    if qm.n != B:
        raise DomainError(f"quantization uses the {B}x{B} matrix, got {qm.n}x{qm.n}")
    return round_half_away(np.asarray(coeffs, dtype=np.float64) / step_sizes(qm, qp)).astype(np.int64)


def dequantize_block(levels, qm: QuantMatrix, qp: int) -> np.ndarray:
    return np.asarray(levels, dtype=np.float64) * step_sizes(qm, qp)


def entropy_bits(levels) -> float:
    """Zero-order empirical entropy of the symbols times their count."""
    flat = np.asarray(levels).ravel()
    if flat.size == 0:
        return 0.0
    _, counts = np.unique(flat, return_counts=True)
    p = counts / flat.size
    return float(-(counts * np.log2(p)).sum())


def rate_estimate(levels, payload_bits: int = 0) -> float:
    """Entropy term, one sign bit per nonzero level, plus side information."""
    nonzero = int(np.count_nonzero(levels))
    return entropy_bits(levels) + nonzero + payload_bits


def resolve_workers(workers: int | None = None) -> int:
    """Explicit value wins; else AQM_THREADS; 0 means one per CPU."""
    if workers is None:
        try:
            workers = int(os.environ.get("AQM_THREADS", "1"))
        except ValueError:
            raise DomainError(f"AQM_THREADS must be an integer, got {os.environ['AQM_THREADS']!r}") from None
    if workers < 0:
        raise DomainError(f"worker count must be >= 0, got {workers}")
    return workers or (os.cpu_count() or 1)


@dataclass
class LayerConfig:
    label: str
    width: int
    height: int
    geometry: DisplayGeometry
    qp: int
    qm_source: str = "adaptive"
    qm: QuantMatrix | None = None  # overrides qm_source when given

    def __post_init__(self):
        if not QP_RANGE[0] <= self.qp <= QP_RANGE[1]:
            raise DomainError(f"qp {self.qp} outside {QP_RANGE}")
        if self.qm_source not in QM_SOURCES:
            raise DomainError(f"qm_source must be one of {QM_SOURCES}, got {self.qm_source!r}")
        if self.width < B or self.height < B:
            raise DomainError(f"layer {self.label} smaller than {B}x{B}")
        if self.qm is not None and self.qm.n != B:
            raise DomainError("layer QM override must be 8x8")

    def resolve_qm(self, predicted: bool = False) -> QuantMatrix:
        kind = "inter" if predicted else "intra"
        if self.qm is not None:
            return self.qm.with_kind(kind)
        if self.qm_source == "default":
            return default_intra_qm().with_kind(kind)
        if self.qm_source == "default-inter":
            return default_inter_qm().with_kind(kind)
        if self.qm_source == "flat":
            return flat_qm(16, kind)
        return adaptive_qm(self.geometry, kind)


@dataclass
class LayerReport:
    label: str
    width: int
    height: int
    qp: int
    qm_source: str
    psnr_db: float
    rate_bits: float
    nonzero: int
    qm: QuantMatrix
    payload_bits: int = 0

    @property
    def lossless(self) -> bool:
        return self.psnr_db >= PSNR_CAP


@dataclass
class SimReport:
    layers: list[LayerReport] = field(default_factory=list)

    def __getitem__(self, idx):
        return self.layers[idx]

    def __len__(self):
        return len(self.layers)


def _to_blocks(arr: np.ndarray) -> np.ndarray:
    h, w = arr.shape
    return arr.reshape(h // B, B, w // B, B).swapaxes(1, 2).reshape(-1, B, B)


def _from_blocks(blocks: np.ndarray, h: int, w: int) -> np.ndarray:
    return blocks.reshape(h // B, w // B, B, B).swapaxes(1, 2).reshape(h, w)


def _code_blocks(residual_blocks, qm, qp, workers):
    """Quantize and reconstruct a block stack; returns (levels, reconstructed residual)."""
    n = len(residual_blocks)
    levels = np.empty(residual_blocks.shape, dtype=np.int64)
    recon = np.empty(residual_blocks.shape, dtype=np.float64)
    steps = step_sizes(qm, qp)

    def work(lo, hi):
        lv = round_half_away(dct2(residual_blocks[lo:hi]) / steps).astype(np.int64)
        levels[lo:hi] = lv
        recon[lo:hi] = idct2(lv * steps)

    bounds = np.linspace(0, n, min(workers, n) + 1).astype(int)
    spans = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    if len(spans) == 1:
        work(*spans[0])
    else:
        # each task owns a disjoint slice; nothing shared is mutated
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            for fut in [pool.submit(work, lo, hi) for lo, hi in spans]:
                fut.result()
    return levels, recon


def encode_layer(image: Image, config: LayerConfig, predictor: Image | None = None,
                 workers: int | None = None) -> tuple[Image, LayerReport]:
    if image.width < B or image.height < B:
        raise DomainError(f"image {image.width}x{image.height} smaller than {B}x{B}")
    if predictor is not None and (predictor.width > image.width or predictor.height > image.height):
        raise DomainError("predictor larger than the layer it predicts")
    workers = resolve_workers(workers)

    h, w = image.shape
    ph, pw = -h % B, -w % B
    target = np.pad(image.samples.astype(np.float64), ((0, ph), (0, pw)), mode="edge")
    if predictor is None:
        prediction = np.full(target.shape, 128.0)
    else:
        up = Image.from_float(upsample_bilinear(predictor.samples, w, h))
        prediction = np.pad(up.samples.astype(np.float64), ((0, ph), (0, pw)), mode="edge")

    qm = config.resolve_qm(predicted=predictor is not None)
    levels, rec_blocks = _code_blocks(_to_blocks(target - prediction), qm, config.qp, workers)
    rec = prediction + _from_blocks(rec_blocks, h + ph, w + pw)
    recon = Image.from_float(rec[:h, :w])

    payload_bits = 8 * len(encode_scaling_lists([[qm]]))
    report = LayerReport(
        label=config.label,
        width=w,
        height=h,
        qp=config.qp,
        qm_source="custom" if config.qm is not None else config.qm_source,
        psnr_db=psnr(image, recon),
        rate_bits=rate_estimate(levels, payload_bits),
        nonzero=int(np.count_nonzero(levels)),
        qm=qm,
        payload_bits=payload_bits,
    )
    return recon, report


def run_pipeline(source: Image, layers: list[LayerConfig], workers: int | None = None) -> SimReport:
    """Code layers bottom-up; each layer predicts from the one below it."""
    if not layers:
        raise DomainError("at least one layer is required")
    for lower, upper in zip(layers, layers[1:]):
        if upper.width < lower.width or upper.height < lower.height:
            raise DomainError(
                f"layer {upper.label} ({upper.width}x{upper.height}) is smaller than "
                f"{lower.label} ({lower.width}x{lower.height})"
            )
    top = layers[-1]
    if top.width > source.width or top.height > source.height:
        raise DomainError("top layer exceeds the source resolution")

    report = SimReport()
    previous = None
    for cfg in layers:
        truth = downsample_box(source, cfg.width, cfg.height)
        previous, entry = encode_layer(truth, cfg, previous, workers)
        report.layers.append(entry)
    return report
