import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from appgen import write_yr_like_app  # noqa: E402

from interaudit.lexicon import default_lexicon  # noqa: E402
from interaudit.sigdb import default_sigdb  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def sigdb():
    return default_sigdb()


@pytest.fixture(scope="session")
def yr_app_dir(tmp_path_factory):
    return write_yr_like_app(tmp_path_factory.mktemp("apps") / "yr_like")


@pytest.fixture(scope="session")
def yr_app(yr_app_dir):
    from interaudit.apk.model import load_app

    return load_app(yr_app_dir)


@pytest.fixture(scope="session")
def table4_rows():
    return json.loads((FIXTURES / "table4_rows.json").read_text())


@pytest.fixture(scope="session")
def annotated_sentences():
    return json.loads((FIXTURES / "annotated_sentences.json").read_text())
