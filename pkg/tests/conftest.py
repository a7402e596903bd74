import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ietlang.iet import make_standard  # noqa: E402
from ietlang.language import IetCoding, build_language  # noqa: E402
from ietlang.words import OrderPair  # noqa: E402

# connection-free up to depth 44 (checked in test_iet)
SYMMETRIC_LENGTHS = ["30902/100000", "41421/100000", "27677/100000"]
# first-return words to 12 are 12, 1312 and 212
THREE_RETURN_LENGTHS = ["6/13", "5/13", "2/13"]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sym_pair():
    return OrderPair.parse("321|123")


@pytest.fixture(scope="session")
def sym_iet(sym_pair):
    return make_standard(sym_pair, SYMMETRIC_LENGTHS)


@pytest.fixture(scope="session")
def sym_lang(sym_iet):
    return build_language(IetCoding(sym_iet), 40)


@pytest.fixture(scope="session")
def three_return_iet(sym_pair):
    return make_standard(sym_pair, THREE_RETURN_LENGTHS)


@pytest.fixture(scope="session")
def rotation():
    return make_standard(OrderPair.parse("21|12"), ["1/3", "2/3"])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
