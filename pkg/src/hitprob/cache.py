"""On-disk cache of reduced hit bases.

Set HITPROB_CACHE to a directory to enable it; nothing is written otherwise.
Each entry is one binary file:

    magic  b"HPQB"
    header <HHIII16sII  version, k, n, column count, row count, mode, weight length, reserved
    weight uint16 * weight length
    pivots int64 * row count
    rows   uint64 * row count * words per row (little endian)

A version or shape mismatch is treated as a miss and the basis is recomputed.
"""

from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path
from typing import Sequence

import numpy as np

from .gf2 import ColumnIndex, EchelonBasis, nwords

MAGIC = b"HPQB"
VERSION = 1
_HEADER = struct.Struct("<HHIII16sII")

ENV_VAR = "HITPROB_CACHE"


def cache_dir() -> Path | None:
    d = os.environ.get(ENV_VAR)
    if not d:
        return None
    p = Path(d)
    p.mkdir(parents=True, exist_ok=True)
    return p


def cache_key(k: int, n: int, mode: str, weight: Sequence[int] = (), version: int = VERSION) -> str:
    raw = f"v{version}|k{k}|n{n}|{mode}|{','.join(map(str, weight))}"
    return hashlib.sha256(raw.encode()).hexdigest()[:32]


def _path(k, n, mode, weight=(), version=VERSION) -> Path | None:
    d = cache_dir()
    if d is None:
        return None
    return d / f"k{k}_n{n}_{mode}_{cache_key(k, n, mode, weight, version)}.bin"


def encode(k: int, n: int, mode: str, basis: EchelonBasis, weight: Sequence[int] = (),
           version: int = VERSION) -> bytes:
    rows = basis.packed_rows()
    piv = np.array(basis.pivots, dtype="<i8")
    head = _HEADER.pack(version, k, n, basis.ncols, len(piv), mode.encode()[:16], len(weight), 0)
    w = np.array(list(weight), dtype="<u2").tobytes()
    return MAGIC + head + w + piv.tobytes() + rows.astype("<u8").tobytes()


def decode(data: bytes, columns: ColumnIndex | None = None):
    """-> (k, n, mode, weight, basis); raises ValueError on a malformed or stale blob."""
    if data[:4] != MAGIC:
        raise ValueError("bad magic")
    off = 4
    version, k, n, ncols, nrows, mode, wl, _ = _HEADER.unpack_from(data, off)
    if version != VERSION:
        raise ValueError(f"cache version {version} != {VERSION}")
    off += _HEADER.size
    weight = tuple(np.frombuffer(data, dtype="<u2", count=wl, offset=off).tolist())
    off += 2 * wl
    piv = np.frombuffer(data, dtype="<i8", count=nrows, offset=off).astype(np.int64)
    off += 8 * nrows
    nw = nwords(ncols)
    rows = np.frombuffer(data, dtype="<u8", count=nrows * nw, offset=off).astype(np.uint64)
    if off + rows.nbytes != len(data):
        raise ValueError("truncated or oversized cache entry")
    if columns is not None and len(columns) != ncols:
        raise ValueError("column count mismatch")
    basis = EchelonBasis._from_reduced(rows.reshape(nrows, nw), piv, ncols, columns)
    return k, n, mode.rstrip(b"\0").decode(), weight, basis


def store_basis(k: int, n: int, mode: str, basis: EchelonBasis, weight: Sequence[int] = ()) -> Path | None:
    p = _path(k, n, mode, weight)
    if p is None:
        return None
    tmp = p.with_suffix(".tmp")
    tmp.write_bytes(encode(k, n, mode, basis, weight))
    tmp.replace(p)
    return p


def load_basis(k: int, n: int, mode: str, columns: ColumnIndex | None = None,
               weight: Sequence[int] = ()) -> EchelonBasis | None:
    p = _path(k, n, mode, weight)
    if p is None or not p.exists():
        return None
    try:
        k2, n2, mode2, w2, basis = decode(p.read_bytes(), columns)
    except (ValueError, struct.error):
        return None
    if (k2, n2, mode2, tuple(w2)) != (k, n, mode, tuple(weight)):
        return None
    return basis


def list_entries() -> list[dict]:
    d = cache_dir()
    if d is None:
        return []
    out = []
    for p in sorted(d.glob("*.bin")):
        try:
            k, n, mode, w, b = decode(p.read_bytes())
            out.append({"file": p.name, "k": k, "n": n, "mode": mode, "rank": b.rank,
                        "columns": b.ncols, "bytes": p.stat().st_size})
        except (ValueError, struct.error):
            out.append({"file": p.name, "stale": True, "bytes": p.stat().st_size})
    return out


def clear() -> int:
    d = cache_dir()
    if d is None:
        return 0
    files = list(d.glob("*.bin"))
    for p in files:
        p.unlink()
    return len(files)
