"""
Pytest configuration and fixtures for the rankpath tests
"""

import pytest
from click.testing import CliRunner
from hypothesis import settings as hypothesis_settings

from rankpath.partitions import BoxedPartition, Partition
from rankpath.paths import parse_word

hypothesis_settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis_settings.register_profile("dev", max_examples=50, deadline=None)
hypothesis_settings.load_profile("dev")


@pytest.fixture(scope='session')
def test_app():
    """Configure the Flask application for testing"""
    from app import app

    app.config['TESTING'] = True
    yield app


@pytest.fixture(scope='session')
def test_client(test_app):
    """Create a test client for the Flask application"""
    return test_app.test_client()


@pytest.fixture
def cli_runner():
    """Click runner with stderr kept apart from stdout"""
    return CliRunner(mix_stderr=False)


@pytest.fixture
def small_cap(monkeypatch):
    """Force a tiny enumeration cap through the environment"""
    monkeypatch.setenv('RANKPATH_CAP', '50')
    return 50


@pytest.fixture(scope='session')
def chain_partition():
    """The worked example (4,4,3,3,1,1) in the 6x4 box"""
    return BoxedPartition(Partition((4, 4, 3, 3, 1, 1)), 6, 4)


@pytest.fixture(scope='session')
def hook_example():
    """(6,6,5,4,4,4,1) in the 9x6 box with its hook data and inverse-Foata path"""
    return {
        'boxed': BoxedPartition(Partition((6, 6, 5, 4, 4, 4, 1)), 9, 6),
        'path': '112122122112111',
        'valleys': ((3, 1), (6, 0), (9, -1), (12, 0)),
        'a': (1, 3, 5, 6),
        'b': (2, 3, 4, 6),
    }


@pytest.fixture(scope='session')
def matching_word():
    """Word whose parenthesis matching is worked out by hand"""
    return parse_word('22112122111')


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line("markers", "unit: mark test as unit test")
    config.addinivalue_line("markers", "functional: mark test as functional test")
    config.addinivalue_line("markers", "api: mark test as HTTP API test")
    config.addinivalue_line("markers", "cli: mark test as command-line test")
    config.addinivalue_line("markers", "property: mark test as property-based test")
    config.addinivalue_line("markers", "performance: mark test as performance test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
