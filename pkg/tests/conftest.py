import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

RUNNING_EXAMPLE = b"alabar_a_la_alabarda"


@pytest.fixture(scope="session")
def running_text():
    from lzsix import Text

    return Text(RUNNING_EXAMPLE)


@pytest.fixture(scope="session")
def running_indexes(running_text):
    from lzsix import SelfIndex

    return {
        kind: SelfIndex.build(running_text, kind=kind) for kind in ("lz77", "lzend")
    }
