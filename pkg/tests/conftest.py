import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permband import cayley

GOLDEN_DIR = Path(__file__).parent / "goldens"


def load_golden(name: str) -> list[tuple[int, ...]]:
    path = GOLDEN_DIR / f"{name}.txt"
    out = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if line:
            out.append(tuple(int(x) for x in line.split()))
    return sorted(out)


@pytest.fixture(scope="session")
def levels_for():
    """Memoised distance-by-rank arrays for small degrees."""
    cache: dict[tuple[int, int], np.ndarray] = {}

    def get(n: int, m: int) -> np.ndarray:
        if (n, m) not in cache:
            cache[(n, m)] = cayley.bfs_levels(n, m)
        return cache[(n, m)]

    return get
