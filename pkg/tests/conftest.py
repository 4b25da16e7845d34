import json
import os

import pytest

from hopfbundles.corpus import Corpus
from hopfbundles.exactlin import QQ, Matrix

HERE = os.path.dirname(os.path.abspath(__file__))


@pytest.fixture(scope="session")
def expected():
    """Frozen numbers produced by the independent sympy oracle."""
    with open(os.path.join(HERE, "..", "tools", "expected.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def corpus():
    # one shared registry over the rationals; every accessor caches
    return Corpus(QQ)


@pytest.fixture(scope="session")
def oracle_matrix():
    def build(entry):
        return Matrix(QQ, [[QQ.parse(str(x)) for x in row] for row in entry])

    return build


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    from hopfbundles.cli import write_fixtures

    d = str(tmp_path_factory.mktemp("fixtures"))
    write_fixtures(d, QQ)
    return d
