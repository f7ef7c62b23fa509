import pytest

from urword import PAPER, CustomFamily, build_index, prefix_stream

# A six-level family with small low-rank blocks: the whole factor language up
# to length ~26k stabilizes inside a one-megaletter prefix, which makes it the
# workhorse for oracle-vs-theory comparisons.
TINY_TABLES = {
    "l": [2, 3, 4, 5, 6, 7],
    "m": [4, 32, 512, 16384, 2**20, 2**27],
    "n": [16, 256, 8192, 2**19, 2**26, 2**34],
}

# Three-level family matching the worked examples in the unit tests below.
MINI3_TABLES = {"l": [2, 3, 5], "m": [8, 64, 4096], "n": [32, 2048, 2**20]}


@pytest.fixture(scope="session")
def paper():
    return PAPER


@pytest.fixture(scope="session")
def tiny():
    return CustomFamily(**TINY_TABLES)


@pytest.fixture(scope="session")
def mini3():
    return CustomFamily(**MINI3_TABLES)


@pytest.fixture(scope="session")
def tiny_index(tiny):
    """Factor index over a 200k prefix, enough for factors up to length 400."""
    prefix = prefix_stream(tiny, 0, 200_000)
    return build_index(prefix, 402)
