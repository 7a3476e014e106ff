from __future__ import annotations

import pytest

from scw.config import ConfigFileError, WorkbenchConfig, load_config, parse_config


def test_defaults_when_absent(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_config() == WorkbenchConfig()


def test_every_key_has_a_default():
    assert parse_config("") == WorkbenchConfig()


def test_full_file(tmp_path):
    path = tmp_path / "workbench.toml"
    path.write_text(
        '[llm]\nurl = "https://x"\nmodel = "m"\nwire = "prompt"\ntimeout = 5\n'
        "[llm.params]\ntemperature = 0.2\n"
        '[embedding]\nurl = "https://e"\n'
        "[validator]\nallow_multiple_roots = true\n"
        "[render]\nwrap = 40\n"
        '[paths]\nreplay_dir = "r"\noutput_dir = "o"\n'
    )
    cfg = load_config(path)
    assert cfg.llm.url == "https://x" and cfg.llm.wire == "prompt" and cfg.llm.timeout == 5.0
    assert cfg.llm.params == {"temperature": 0.2}
    assert cfg.embedding.url == "https://e"
    assert cfg.allow_multiple_roots and cfg.wrap == 40
    assert (cfg.replay_dir, cfg.output_dir) == ("r", "o")


@pytest.mark.parametrize(
    "text",
    ["[llm]\napi_key = \"secret\"\n", "[nope]\n", "[render]\nwrap = true\n", "[render]\nwrap = 0\n",
     "[llm]\nwire = \"grpc\"\n", "llm = 3\n", "not toml ["],
)
def test_rejected(text):
    with pytest.raises(ConfigFileError):
        parse_config(text)


def test_unreadable(tmp_path):
    with pytest.raises(ConfigFileError):
        load_config(tmp_path / "missing.toml")
