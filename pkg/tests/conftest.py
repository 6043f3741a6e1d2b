import json
from functools import lru_cache
from pathlib import Path

import pytest

from chainsemi import maps
from chainsemi.families import enumerate_family

GOLDEN = json.loads((Path(__file__).parent / "golden" / "counts.json").read_text())


@lru_cache(maxsize=None)
def family(tag: str, n: int):
    return enumerate_family(tag, n)


@pytest.fixture
def golden():
    return GOLDEN


def m(n, *pairs):
    return maps.make(n, pairs)


def blocks(n, bl, images):
    return maps.from_blocks(n, bl, images)
