"""Binary element cache.

Layout (little endian)::

    8 bytes   magic b"CSEMI001"
    1 byte    family tag code
    1 byte    chain size n
    8 bytes   count (unsigned)
    8*count   canonical ids (unsigned), ascending
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .exceptions import CacheFormatError

MAGIC = b"CSEMI001"
_HEADER = struct.Struct("<8sBBQ")


def cache_path(cache_dir: str | Path, tag, n: int) -> Path:
    return Path(cache_dir) / f"{tag.value}_{n}.bin"


def dumps(tag, n: int, ids) -> bytes:
    ids = np.asarray(ids, dtype="<u8")
    return _HEADER.pack(MAGIC, tag.code, n, ids.shape[0]) + ids.tobytes()


def loads(data: bytes):
    from .families import FamilyTag

    if len(data) < _HEADER.size:
        raise CacheFormatError("truncated header")
    magic, code, n, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    tags = list(FamilyTag)
    if code >= len(tags):
        raise CacheFormatError(f"unknown family code {code}")
    body = data[_HEADER.size :]
    if len(body) != 8 * count:
        raise CacheFormatError(f"expected {count} ids, found {len(body) // 8}")
    ids = np.frombuffer(body, dtype="<u8").astype(np.int64)
    if np.any(np.diff(ids) <= 0):
        raise CacheFormatError("ids are not strictly ascending")
    return tags[code], n, ids


def write_cache(path: str | Path, tag, n: int, ids) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(dumps(tag, n, ids))
    tmp.replace(path)


def read_cache(path: str | Path):
    return loads(Path(path).read_bytes())
