from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

# Table 1 as printed: scale, range, upper value, suggested value.
PAPER_TABLE = [
    (3, 1.632993, 2.632993, 3),
    (4, 2.236068, 3.236068, 3),
    (5, 2.828427, 3.828427, 4),
    (6, 3.41565, 4.41565, 4),
    (7, 4.0, 5.0, 5),
    (8, 4.582576, 5.582576, 6),
    (9, 5.163978, 6.163978, 6),
    (10, 5.744563, 6.744563, 7),
]


@pytest.fixture
def data_dir():
    return DATA
