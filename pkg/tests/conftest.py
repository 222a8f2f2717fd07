import random
from pathlib import Path

import numpy as np
import pytest

from z4lat.codes import standard_form

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "z4lat" / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


def random_code(rng: random.Random, n: int, rows: int | None = None):
    """Random Z4 code via standard-form reduction of a random matrix."""
    rows = rows if rows is not None else rng.randint(1, n)
    M = [[rng.randrange(4) for _ in range(n)] for _ in range(rows)]
    return standard_form(np.array(M, dtype=np.int64))
