"""File striping: byte stream <-> stripe rows, shard files and the manifest.

Bits are always taken least-significant first.  A stripe row holds ``k*b``
input bits; symbol ``j`` of row ``r`` is stored in shard ``j`` at bit
positions ``r*b .. r*b + b - 1`` (coefficient of alpha^c at ``r*b + c``).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .code import CodeParams, encode_many
from .config import CONFIG_KEYS, config_of, int_field, params_from_config
from .errors import DimensionMismatch

MAGIC = "MDSA1"
VERSION = 1
MANIFEST_NAME = "manifest.json"


# -- bit packing ------------------------------------------------------------------


def stripe_rows_for(length: int, params: CodeParams) -> int:
    row_bits = params.k * params.b
    return -(-8 * length // row_bits)


def bytes_to_info(data: bytes, params: CodeParams) -> np.ndarray:
    """Split ``data`` into an (R, k) array of symbols, zero-padding the last row."""
    rows = stripe_rows_for(len(data), params)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    padded = np.zeros(rows * params.k * params.b, dtype=np.int64)
    padded[: bits.size] = bits
    return _bits_to_symbols(padded.reshape(rows, params.k, params.b), params.b)


def info_to_bytes(info: np.ndarray, length: int, params: CodeParams) -> bytes:
    bits = _symbols_to_bits(np.asarray(info, dtype=np.int64), params.b).reshape(-1)
    return np.packbits(bits.astype(np.uint8), bitorder="little").tobytes()[:length]


def _bits_to_symbols(bits: np.ndarray, b: int) -> np.ndarray:
    weights = np.int64(1) << np.arange(b, dtype=np.int64)
    return (bits.astype(np.int64) * weights).sum(axis=-1)


def _symbols_to_bits(symbols: np.ndarray, b: int) -> np.ndarray:
    return (symbols[..., None] >> np.arange(b, dtype=np.int64)) & 1


def pack_shard(column: np.ndarray, b: int) -> bytes:
    bits = _symbols_to_bits(np.asarray(column, dtype=np.int64), b).reshape(-1)
    return np.packbits(bits.astype(np.uint8), bitorder="little").tobytes()


def unpack_shard(raw: bytes, rows: int, b: int) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[: rows * b]
    return _bits_to_symbols(bits.reshape(rows, b), b)


def shard_size(rows: int, b: int) -> int:
    return -(-rows * b // 8)


def digest(raw: bytes) -> str:
    return hashlib.blake2b(raw, digest_size=8).hexdigest()


def shard_name(j: int) -> str:
    return f"shard_{j:02d}.bin"


# -- manifest and shard directories --------------------------------------------------


@dataclass
class Manifest:
    params: CodeParams
    original_length: int
    stripe_rows: int
    digests: list[str]

    def to_dict(self) -> dict:
        return {
            "magic": MAGIC,
            "version": VERSION,
            **config_of(self.params),
            "original_length": self.original_length,
            "stripe_rows": self.stripe_rows,
            "shards": [{"file": shard_name(j), "digest": d} for j, d in enumerate(self.digests, 1)],
        }

    @classmethod
    def from_dict(cls, doc: Any) -> "Manifest":
        if not isinstance(doc, dict) or doc.get("magic") != MAGIC:
            raise DimensionMismatch("not a stripe manifest (bad magic)")
        if doc.get("version") != VERSION:
            raise DimensionMismatch(f"unsupported manifest version {doc.get('version')!r}")
        params = params_from_config({key: doc[key] for key in CONFIG_KEYS if key in doc})
        length, rows = int_field(doc, "original_length"), int_field(doc, "stripe_rows")
        shards = doc.get("shards")
        if not isinstance(shards, list) or len(shards) != params.n:
            raise DimensionMismatch(f"manifest must list {params.n} shards")
        if length < 0 or rows != stripe_rows_for(length, params):
            raise DimensionMismatch(f"stripe_rows {rows} inconsistent with original_length {length}")
        return cls(params, length, rows, [str(s.get("digest", "")) for s in shards])


def write_stripes(params: CodeParams, data: bytes, outdir: Path) -> Manifest:
    words = encode_many(params, bytes_to_info(data, params))
    outdir.mkdir(parents=True, exist_ok=True)
    digests = []
    for j in range(params.n):
        raw = pack_shard(words[:, j], params.b)
        (outdir / shard_name(j + 1)).write_bytes(raw)
        digests.append(digest(raw))
    manifest = Manifest(params, len(data), words.shape[0], digests)
    write_manifest(manifest, outdir)
    return manifest


def write_manifest(manifest: Manifest, outdir: Path) -> None:
    text = json.dumps(manifest.to_dict(), indent=2) + "\n"
    (outdir / MANIFEST_NAME).write_text(text, encoding="utf-8")


def read_manifest(shard_dir: Path) -> Manifest:
    text = (shard_dir / MANIFEST_NAME).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DimensionMismatch(f"manifest is not valid JSON: {exc.msg}") from None
    return Manifest.from_dict(doc)


def read_shards(manifest: Manifest, shard_dir: Path) -> tuple[np.ndarray, list[str]]:
    """Return the (R, n) symbol array and the current digest of every shard."""
    p = manifest.params
    words = np.zeros((manifest.stripe_rows, p.n), dtype=np.int64)
    digests = []
    want = shard_size(manifest.stripe_rows, p.b)
    for j in range(p.n):
        raw = (shard_dir / shard_name(j + 1)).read_bytes()
        if len(raw) != want:
            raise OSError(f"{shard_name(j + 1)} has {len(raw)} bytes, expected {want}")
        digests.append(digest(raw))
        words[:, j] = unpack_shard(raw, manifest.stripe_rows, p.b)
    return words, digests


def write_shards(words: np.ndarray, b: int, shard_dir: Path) -> list[str]:
    digests = []
    for j in range(words.shape[1]):
        raw = pack_shard(words[:, j], b)
        (shard_dir / shard_name(j + 1)).write_bytes(raw)
        digests.append(digest(raw))
    return digests
