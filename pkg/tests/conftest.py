import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from implicitreg import Dataset


@pytest.fixture
def tri_dataset():
    """Three points satisfying x + y = 1 with a full-rank {x, y} design."""
    return Dataset([1.0, 0.0, 0.5], [0.0, 1.0, 0.5])


@pytest.fixture
def circle6():
    """Six exact points on the radius-2 circle centered at the origin."""
    s = math.sqrt(2.0)
    return Dataset([2.0, -2.0, 0.0, 0.0, s, s], [0.0, 0.0, 2.0, -2.0, s, -s])


def random_dataset(rng, n=None):
    """Generic well-scaled random dataset for oracle comparisons."""
    if n is None:
        n = int(rng.integers(10, 51))
    x = rng.uniform(0.5, 3.0, size=n)
    y = rng.uniform(0.5, 3.0, size=n)
    return Dataset(x, y)
