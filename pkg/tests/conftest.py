import pytest

from lieon.utils.config import CONFIG_DIR_ENV


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    # Keep every test away from the real ~/.lieon-cli
    monkeypatch.setenv(CONFIG_DIR_ENV, str(tmp_path / 'config'))
    return tmp_path / 'config'
