import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from streamscc import build_stream  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def two_nodes():
    # u, v present on [0, 9], linked on [2, 5]
    return build_stream([(0, 9, "u"), (0, 9, "v")], [(2, 5, "u", "v")])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
