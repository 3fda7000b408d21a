import os

import pytest

EXTENDED = os.environ.get("SDCODES_EXTENDED") == "1"


def pytest_collection_modifyitems(config, items):
    skip = pytest.mark.skip(reason="extended-scale run; set SDCODES_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords and not EXTENDED:
            item.add_marker(skip)


@pytest.fixture
def outdir(tmp_path):
    return str(tmp_path)
