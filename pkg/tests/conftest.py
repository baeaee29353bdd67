import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from jacobidiag.laurent import LaurentPoly  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
DELTA = "(t-1+t^-1)"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def laurent_polys(max_terms: int = 4, lo: int = -3, hi: int = 3, coeff: int = 5):
    term = st.tuples(st.integers(lo, hi), st.integers(-coeff, coeff))
    return st.lists(term, max_size=max_terms).map(lambda ts: LaurentPoly(ts))


def nonzero_polys(**kw):
    return laurent_polys(**kw).filter(lambda p: not p.is_zero())


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
