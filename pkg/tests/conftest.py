import random

import pytest

from dsum.algebra import CONTRACTS


@pytest.fixture
def rng():
    return random.Random(0xD5)


@pytest.fixture(params=sorted(CONTRACTS))
def contract_name(request):
    return request.param
