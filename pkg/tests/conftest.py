import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sclab import build_group  # noqa: E402

D_GROUP = "semidirect(product(elemab:2^2,cyclic:3),cyclic:2,x2 x1 x3^-1)"

# (spec, prime) pairs used across the suite; the odd-order ones are read at their own prime
BATTERY = [
    ("cyclic:4", 2), ("cyclic:9", 3), ("cyclic:6", 2), ("dihedral:8", 2), ("quaternion:8", 2),
    ("extraspecial:3", 3), ("alt:4", 2), ("sym:3", 3), ("product(cyclic:2,sym:3)", 2),
    ("sym:4", 2), (D_GROUP, 2), ("alt:5", 2), ("sym:5", 2), ("SL:3,2", 2),
]
SMALL = [b for b in BATTERY if b[0] not in ("alt:5", "sym:5", "SL:3,2")]


@lru_cache(maxsize=None)
def group(spec: str):
    return build_group(spec)


@pytest.fixture
def G_of():
    return group
