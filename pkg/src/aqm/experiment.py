"""QP sweeps over layered configurations and their CSV reports."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .display import DisplayGeometry, parse_geometry
from .errors import DomainError
from .image import Image
from .metrics import RdCurve
from .sim import LayerConfig, run_pipeline

SWEEP_QPS = (22, 27, 32, 37)
CSV_COLUMNS = ("layer", "label", "qp", "qm_source", "psnr_db", "rate_bits")


@dataclass(frozen=True)
class LayerSpec:
    """Layer layout independent of QP and QM choice."""

    label: str
    width: int
    height: int
    geometry: DisplayGeometry

    def config(self, qp: int, qm_source: str) -> LayerConfig:
        return LayerConfig(self.label, self.width, self.height, self.geometry, qp, qm_source)


# label, coded-size divisor of the source, display preset
STANDARD_LAYERS = {
    "bl": ("BL", 4, "hd"),
    "el1": ("EL1", 2, "4k"),
    "el2": ("EL2", 1, "8k"),
}

_CUSTOM_RE = re.compile(r"^(\w+)=(\d+)x(\d+):(\S+)$")


def parse_layer(text: str, source_width: int, source_height: int) -> LayerSpec:
    """``bl``/``el1``/``el2`` or ``LABEL=WxH:GEOMETRY`` (e.g. ``EL=256x256:4k``)."""
    key = text.strip().lower()
    if key in STANDARD_LAYERS:
        label, div, preset = STANDARD_LAYERS[key]
        return LayerSpec(label, source_width // div, source_height // div, parse_geometry(preset))
    m = _CUSTOM_RE.match(text.strip())
    if not m:
        raise DomainError(
            f"bad layer spec {text!r}; use one of {sorted(STANDARD_LAYERS)} or LABEL=WxH:GEOMETRY"
        )
    return LayerSpec(m.group(1), int(m.group(2)), int(m.group(3)), parse_geometry(m.group(4)))


def parse_layers(text: str, source_width: int, source_height: int) -> list[LayerSpec]:
    specs = [parse_layer(t, source_width, source_height) for t in text.split(",") if t.strip()]
    if not specs:
        raise DomainError("no layers given")
    for lower, upper in zip(specs, specs[1:]):
        if upper.width < lower.width or upper.height < lower.height:
            raise DomainError(f"layer {upper.label} is smaller than the layer below it ({lower.label})")
    for spec in specs:
        if spec.width > source_width or spec.height > source_height:
            raise DomainError(f"layer {spec.label} exceeds the {source_width}x{source_height} source")
    return specs


def standard_layers(size: int, names=("bl", "el1", "el2")) -> list[LayerSpec]:
    return [parse_layer(n, size, size) for n in names]


@dataclass(frozen=True)
class SweepRow:
    layer: int
    label: str
    qp: int
    qm_source: str
    psnr_db: float
    rate_bits: float


def sweep(source: Image, specs: list[LayerSpec], qps=SWEEP_QPS,
          qm_sources=("default", "adaptive"), workers: int | None = None) -> list[SweepRow]:
    """One pipeline run per (qm_source, qp); rows ordered by source, layer, qp.

    A ``qm_sources`` item is either a source name applied to every layer or a
    ``(name, per_layer_sources)`` pair for mixed configurations.
    """
    rows = []
    for item in qm_sources:
        if isinstance(item, str):
            src, per_layer = item, [item] * len(specs)
        else:
            src, per_layer = item
            if len(per_layer) != len(specs):
                raise DomainError(f"{src!r}: {len(per_layer)} sources for {len(specs)} layers")
        per_qp = {
            qp: run_pipeline(source, [s.config(qp, ls) for s, ls in zip(specs, per_layer)], workers)
            for qp in qps
        }
        for idx, spec in enumerate(specs):
            for qp in qps:
                entry = per_qp[qp][idx]
                rows.append(SweepRow(idx, spec.label, qp, src, entry.psnr_db, entry.rate_bits))
    return rows


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.layer, r.label, r.qp, r.qm_source, f"{r.psnr_db:.6f}", f"{r.rate_bits:.3f}"])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[SweepRow]:
    reader = csv.DictReader(io.StringIO(text))
    missing = set(CSV_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise DomainError(f"report CSV lacks columns {sorted(missing)}")
    return [
        SweepRow(int(d["layer"]), d["label"], int(d["qp"]), d["qm_source"],
                 float(d["psnr_db"]), float(d["rate_bits"]))
        for d in reader
    ]


def layer_curve(rows: list[SweepRow], label: str, qm_source: str, cumulative: bool = True) -> RdCurve:
    """RD curve of one layer.

    With ``cumulative`` the rate of a layer includes every layer below it,
    since decoding it requires them.
    """
    target = [r for r in rows if r.label == label and r.qm_source == qm_source]
    if not target:
        raise DomainError(f"no rows for layer {label!r} with qm_source {qm_source!r}")
    index = target[0].layer
    points = []
    for r in sorted(target, key=lambda r: r.qp):
        rate = r.rate_bits
        if cumulative:
            rate = sum(o.rate_bits for o in rows
                       if o.qm_source == qm_source and o.qp == r.qp and o.layer <= index)
        points.append((rate, r.psnr_db))
    return RdCurve.from_points(points)
