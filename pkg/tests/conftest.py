import pytest

from probaccept import fair_lottery
from probaccept.basefile import dump


@pytest.fixture(scope="session")
def lottery100():
    return fair_lottery(100)


@pytest.fixture(scope="session")
def lottery100_path(lottery100, tmp_path_factory):
    path = tmp_path_factory.mktemp("bases") / "lottery100.bb"
    dump(lottery100, path)
    return str(path)


@pytest.fixture(scope="session")
def lottery3_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("bases") / "lottery3.bb"
    dump(fair_lottery(3), path)
    return str(path)
