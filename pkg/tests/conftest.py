import os
import sys

import pytest

HERE = os.path.dirname(__file__)
if HERE not in sys.path:
    sys.path.insert(0, HERE)


@pytest.fixture(scope="session")
def exp40_levels():
    from afmspec.calibration import oracle_levels
    return oracle_levels(40.0, 0.0)


@pytest.fixture(scope="session")
def yuk30_levels():
    from afmspec.calibration import oracle_levels
    return oracle_levels(30.0, -1.0)
