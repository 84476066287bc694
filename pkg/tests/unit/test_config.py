"""
Unit tests for environment configuration and logging setup
"""

import logging

import pytest

from rankpath.config import DEFAULT_CAP, Settings, load_settings
from rankpath.logging_setup import configure_logging


@pytest.mark.unit
class TestSettings:
    """Test RANKPATH_* environment handling"""

    def test_defaults(self, monkeypatch):
        """Test defaults when nothing is set"""
        for name in ['RANKPATH_CAP', 'RANKPATH_JOBS', 'RANKPATH_LOG_LEVEL', 'RANKPATH_FORMAT']:
            monkeypatch.delenv(name, raising=False)
        assert load_settings() == Settings(cap=DEFAULT_CAP, jobs=1, log_level='INFO', output_format='text')

    def test_environment(self, monkeypatch):
        """Test values are read and normalised"""
        monkeypatch.setenv('RANKPATH_CAP', '1_000')
        monkeypatch.setenv('RANKPATH_JOBS', '4')
        monkeypatch.setenv('RANKPATH_LOG_LEVEL', 'debug')
        monkeypatch.setenv('RANKPATH_FORMAT', 'JSON')
        settings = load_settings()
        assert (settings.cap, settings.jobs) == (1000, 4)
        assert settings.log_level == 'DEBUG'
        assert settings.output_format == 'json'

    def test_invalid_integers(self, monkeypatch):
        """Test non-integers and non-positive values are rejected"""
        for raw in ['many', '0', '-3']:
            monkeypatch.setenv('RANKPATH_CAP', raw)
            with pytest.raises(ValueError):
                load_settings()

    def test_override_ignores_none(self):
        """Test command-line overrides only replace given values"""
        settings = Settings(cap=10, jobs=2)
        changed = settings.override(cap=None, jobs=3, output_format='json')
        assert (changed.cap, changed.jobs, changed.output_format) == (10, 3, 'json')
        assert settings.jobs == 2


@pytest.mark.unit
class TestLoggingSetup:
    """Test logging configuration"""

    def test_level(self):
        """Test the root level follows the requested name"""
        logger = configure_logging('warning')
        assert logger.name == 'rankpath'
        assert logging.getLogger().level == logging.WARNING
        configure_logging('INFO')

    def test_unknown_level_falls_back(self):
        """Test an unknown level name falls back to INFO"""
        configure_logging('chatty')
        assert logging.getLogger().level == logging.INFO
