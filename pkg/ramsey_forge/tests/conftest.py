import pytest

from ramsey_forge.config import get_default_config


@pytest.fixture
def config(tmp_path, monkeypatch):
    monkeypatch.delenv("RAMSEY_FORGE_CAP", raising=False)
    cfg = get_default_config()
    cfg.artifacts_dir = str(tmp_path / "artifacts")
    return cfg
