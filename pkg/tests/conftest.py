import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from voalab import Space, choose_X, quotient_table


@pytest.fixture(scope="session")
def vl8():
    return Space(norms=(2,), cutoff=8)


@pytest.fixture(scope="session")
def params_vl(vl8):
    return choose_X(vl8, 8)


@pytest.fixture(scope="session")
def half_module():
    return Space(norms=(2,), coset=(Fraction(1, 2),), cutoff=6)


@pytest.fixture(scope="session")
def vplus_table_12():
    """The theta-fixed C_2 table to stratum 12 — the expensive shared input."""
    return quotient_table(Space(norms=(2,), cutoff=12), 2, 12, sign=1)
