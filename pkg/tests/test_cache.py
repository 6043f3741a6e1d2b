import struct

import numpy as np
import pytest

from chainsemi import cache
from chainsemi.exceptions import CacheFormatError
from chainsemi.families import FamilyTag, enumerate_family


def test_layout():
    data = cache.dumps(FamilyTag.CP, 1, [0, 1])
    assert data[:8] == b"CSEMI001"
    assert data[8] == FamilyTag.CP.code
    assert data[9] == 1
    assert struct.unpack("<Q", data[10:18]) == (2,)
    assert struct.unpack("<2Q", data[18:]) == (0, 1)
    assert len(data) == 18 + 16


def test_round_trip_fresh_enumeration(tmp_path):
    fresh = enumerate_family("orcp", 4)
    enumerate_family("orcp", 4, cache_dir=tmp_path)
    path = cache.cache_path(tmp_path, FamilyTag.ORCP, 4)
    assert path.exists()
    tag, n, ids = cache.read_cache(path)
    assert tag is FamilyTag.ORCP and n == 4
    assert np.array_equal(ids, fresh.ids)
    again = enumerate_family("orcp", 4, cache_dir=tmp_path)
    assert np.array_equal(again.ids, fresh.ids)


def test_bytes_stable(tmp_path):
    enumerate_family("cp", 3, cache_dir=tmp_path / "a")
    enumerate_family("cp", 3, cache_dir=tmp_path / "b")
    a = (tmp_path / "a" / "cp_3.bin").read_bytes()
    b = (tmp_path / "b" / "cp_3.bin").read_bytes()
    assert a == b


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: b"XXXXXXXX" + d[8:],
        lambda d: d[:-1],
        lambda d: d[:8] + bytes([99]) + d[9:],
        lambda d: d[:18] + d[26:34] + d[18:26] + d[34:],
    ],
    ids=["magic", "truncated", "tag", "unsorted"],
)
def test_corrupt(mutate):
    data = cache.dumps(FamilyTag.P, 2, list(range(9)))
    with pytest.raises(CacheFormatError):
        cache.loads(mutate(data))
