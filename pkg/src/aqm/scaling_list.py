"""Per-layer scaling list signaling.

Bitstream layout (MSB-first)::

    ue(layer_count)
    for each layer:
        ue(list_count)
        for each list:
            u(1)         kind, 0 = intra, 1 = inter
            64 x se(v)   DPCM deltas in up-right diagonal order,
                         predictor starts at 16 for every list
    zero bits up to the next byte boundary

The container prepends the 4-byte magic ``AQMS`` and a version byte.
Only 8x8 lists are coded; larger matrices are rebuilt with ``upsample_qm``.
"""

from __future__ import annotations

from .errors import DomainError, IntegrityError, ParseError
from .qm import QM_MAX, QM_MIN, QuantMatrix

MAGIC = b"AQMS"
VERSION = 1
PREDICTOR_START = 16
_MAX_LEADING_ZEROS = 32

# A payload is a list of layers; a layer is a list of QuantMatrix (8x8).
Payload = list[list[QuantMatrix]]


def upright_diagonal_scan(n: int) -> list[tuple[int, int]]:
    """Anti-diagonals in order; within one, from bottom-left to top-right."""
    if n < 1:
        raise DomainError(f"scan size must be >= 1, got {n}")
    order = []
    for s in range(2 * n - 1):
        for r in range(min(s, n - 1), max(0, s - n + 1) - 1, -1):
            order.append((r, s - r))
    return order


class BitWriter:
    def __init__(self):
        self._bytes = bytearray()
        self._acc = 0
        self._nbits = 0
        self.bits_written = 0

    def write_bits(self, value: int, count: int):
        for shift in range(count - 1, -1, -1):
            self._acc = (self._acc << 1) | ((value >> shift) & 1)
            self._nbits += 1
            if self._nbits == 8:
                self._bytes.append(self._acc)
                self._acc = 0
                self._nbits = 0
        self.bits_written += count

    def write_ue(self, value: int):
        if value < 0:
            raise DomainError(f"ue(v) needs a non-negative value, got {value}")
        code = value + 1
        length = code.bit_length()
        self.write_bits(0, length - 1)
        self.write_bits(code, length)

    def write_se(self, value: int):
        self.write_ue(2 * value - 1 if value > 0 else -2 * value)

    def getvalue(self) -> bytes:
        """Bytes written so far, zero-padded to a byte boundary."""
        out = bytearray(self._bytes)
        if self._nbits:
            out.append(self._acc << (8 - self._nbits))
        return bytes(out)


class BitReader:
    def __init__(self, data: bytes):
        self._data = bytes(data)
        self.pos = 0

    @property
    def bits_left(self) -> int:
        return 8 * len(self._data) - self.pos

    def read_bit(self) -> int:
        if self.pos >= 8 * len(self._data):
            raise ParseError("truncated stream")
        byte = self._data[self.pos >> 3]
        bit = (byte >> (7 - (self.pos & 7))) & 1
        self.pos += 1
        return bit

    def read_bits(self, count: int) -> int:
        value = 0
        for _ in range(count):
            value = (value << 1) | self.read_bit()
        return value

    def read_ue(self) -> int:
        zeros = 0
        while self.read_bit() == 0:
            zeros += 1
            if zeros > _MAX_LEADING_ZEROS:
                raise ParseError("exp-Golomb prefix too long")
        return (1 << zeros) - 1 + self.read_bits(zeros)

    def read_se(self) -> int:
        k = self.read_ue()
        return (k + 1) // 2 if k & 1 else -(k // 2)


def _check_list(qm: QuantMatrix):
    if not isinstance(qm, QuantMatrix):
        raise DomainError(f"expected QuantMatrix, got {type(qm).__name__}")
    if qm.n != 8:
        raise DomainError(f"only 8x8 lists are signaled, got {qm.n}x{qm.n}")
    if qm.entries.min() < QM_MIN or qm.entries.max() > QM_MAX:
        raise DomainError(f"entries must lie in [{QM_MIN}, {QM_MAX}]")


def write_list(writer: BitWriter, qm: QuantMatrix):
    _check_list(qm)
    writer.write_bits(0 if qm.kind == "intra" else 1, 1)
    pred = PREDICTOR_START
    for r, c in upright_diagonal_scan(8):
        value = int(qm.entries[r, c])
        writer.write_se(value - pred)
        pred = value


def read_list(reader: BitReader) -> QuantMatrix:
    kind = "inter" if reader.read_bit() else "intra"
    entries = [[0] * 8 for _ in range(8)]
    pred = PREDICTOR_START
    for r, c in upright_diagonal_scan(8):
        pred += reader.read_se()
        if not QM_MIN <= pred <= QM_MAX:
            raise IntegrityError(f"decoded entry {pred} at ({r}, {c}) outside [{QM_MIN}, {QM_MAX}]")
        entries[r][c] = pred
    return QuantMatrix(entries, kind)


def encode_scaling_lists(payload: Payload) -> bytes:
    if len(payload) < 1:
        raise DomainError("payload needs at least one layer")
    writer = BitWriter()
    writer.write_ue(len(payload))
    for layer in payload:
        if len(layer) < 1:
            raise DomainError("every layer needs at least one list")
        writer.write_ue(len(layer))
        for qm in layer:
            write_list(writer, qm)
    return writer.getvalue()


def decode_scaling_lists(data: bytes) -> Payload:
    if not data:
        raise ParseError("empty stream")
    reader = BitReader(data)
    layer_count = reader.read_ue()
    if layer_count < 1:
        raise ParseError("stream declares zero layers")
    payload = []
    for _ in range(layer_count):
        list_count = reader.read_ue()
        if list_count < 1:
            raise ParseError("layer declares zero lists")
        payload.append([read_list(reader) for _ in range(list_count)])
    if reader.bits_left >= 8:
        raise ParseError(f"{reader.bits_left // 8} trailing bytes after payload")
    if reader.read_bits(reader.bits_left) != 0:
        raise ParseError("non-zero padding bits")
    return payload


def list_body_bits(qm: QuantMatrix) -> int:
    """Bits taken by one coded list (kind bit plus deltas)."""
    writer = BitWriter()
    write_list(writer, qm)
    return writer.bits_written


def pack(payload: Payload) -> bytes:
    return MAGIC + bytes([VERSION]) + encode_scaling_lists(payload)


def unpack(blob: bytes) -> Payload:
    if len(blob) < len(MAGIC) + 1:
        raise ParseError(f"container truncated: {len(blob)} bytes")
    magic = bytes(blob[:4])
    if magic != MAGIC:
        raise ParseError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if blob[4] != VERSION:
        raise ParseError(f"unsupported container version {blob[4]}, expected {VERSION}")
    return decode_scaling_lists(blob[5:])


def payload_to_json(payload: Payload) -> dict:
    return {
        "layers": [
            [{"kind": qm.kind, "matrix": qm.tolist()} for qm in layer] for layer in payload
        ]
    }


def payload_from_json(doc: dict) -> Payload:
    try:
        layers = doc["layers"]
        return [[QuantMatrix(item["matrix"], item["kind"]) for item in layer] for layer in layers]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed scaling-list JSON: {exc}") from exc
