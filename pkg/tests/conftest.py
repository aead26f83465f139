import numpy as np
import pytest

from cdsma import create_app, db
from cdsma.graph import build_graph


@pytest.fixture
def app():
    app = create_app('testing')
    with app.app_context():
        db.create_all()
        yield app
        db.session.remove()
        db.drop_all()


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)], 3)


@pytest.fixture
def cycle4():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 0)], 4)


@pytest.fixture
def star5():
    return build_graph([(0, leaf) for leaf in range(1, 5)], 5)
