"""Ring table cache files (JSON and the ``FRC1`` binary layout)."""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .ring import FiniteRing, RingError

MAGIC = b"FRC1"


def ring_to_json(R: FiniteRing) -> dict:
    return {"version": 1, "label": R.label, "order": R.order, "zero": R.zero, "one": R.one,
            "add": R.add.tolist(), "mul": R.mul.tolist()}


def ring_from_json(doc: dict) -> FiniteRing:
    if doc.get("version") != 1:
        raise RingError(f"unsupported cache version {doc.get('version')!r}")
    n = int(doc["order"])
    add = np.array(doc["add"], dtype=np.int64)
    mul = np.array(doc["mul"], dtype=np.int64)
    if add.shape != (n, n) or mul.shape != (n, n):
        raise RingError("cache tables do not match declared order")
    return FiniteRing.from_tables(add, mul, doc["zero"], doc["one"], doc.get("label", "R"))


def ring_to_bytes(R: FiniteRing) -> bytes:
    head = MAGIC + struct.pack("<III", R.order, R.zero, R.one)
    return (head + R.add.astype("<u4").tobytes(order="C")
            + R.mul.astype("<u4").tobytes(order="C"))


def ring_from_bytes(data: bytes, label: str = "R") -> FiniteRing:
    if data[:4] != MAGIC:
        raise RingError("not an FRC1 cache file")
    n, zero, one = struct.unpack_from("<III", data, 4)
    body = np.frombuffer(data, dtype="<u4", offset=16)
    if body.size != 2 * n * n:
        raise RingError(f"expected {2 * n * n} table entries, found {body.size}")
    add = body[: n * n].reshape(n, n)
    mul = body[n * n:].reshape(n, n)
    return FiniteRing.from_tables(add, mul, zero, one, label)


def save_ring(R: FiniteRing, path, fmt: str = "json") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(ring_to_json(R)))
    elif fmt == "bin":
        path.write_bytes(ring_to_bytes(R))
    else:
        raise ValueError(f"unknown cache format {fmt!r}")


def load_ring(path) -> FiniteRing:
    """Load a cache file, detecting the format from its first bytes."""
    path = Path(path)
    data = path.read_bytes()
    if data[:4] == MAGIC:
        return ring_from_bytes(data, label=path.stem)
    return ring_from_json(json.loads(data.decode("utf-8")))
