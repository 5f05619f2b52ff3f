import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from genpsim.presets import four_mode_schedule, two_mode_schedule


@pytest.fixture(scope="session")
def fig3_schedule():
    return two_mode_schedule()


@pytest.fixture(scope="session")
def fig5_schedule():
    return four_mode_schedule()
