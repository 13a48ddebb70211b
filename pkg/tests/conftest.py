import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from weyldl.rootdata import build_root_system, build_twist  # noqa: E402
from weyldl.weyl import WeylGroup  # noqa: E402

_GROUPS: dict[tuple[str, int], WeylGroup] = {}


def group(family: str, rank: int) -> WeylGroup:
    key = (family, rank)
    if key not in _GROUPS:
        _GROUPS[key] = WeylGroup(build_root_system(family, rank))
    return _GROUPS[key]


@pytest.fixture(scope="session")
def A2():
    return group("A", 2)


@pytest.fixture(scope="session")
def B2():
    return group("B", 2)


@pytest.fixture(scope="session")
def G2():
    return group("G", 2)


@pytest.fixture(scope="session")
def F4():
    return group("F", 4)


@pytest.fixture(scope="session")
def D4():
    return group("D", 4)


def twist_of(W: WeylGroup, order: int):
    family, rank = W.system.key
    return build_twist(family, rank, order)
