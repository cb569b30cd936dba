"""Load TetherConfig from tether.toml / tether.yaml if present.

Merges file config with CLI kwargs. CLI overrides file.
"""

from __future__ import annotations

from dataclasses import fields
from pathlib import Path

from tether._errors import ConfigError
from tether.config import TetherConfig
from tether.observability import get_collector

# Config keys that hold paths, tuples, or are not settable from a file
_PATH_KEYS = frozenset(
    {"interactions", "drug_similarity", "target_similarity", "dataset_dir", "table", "kinds", "output"}
)
_TUPLE_KEYS = frozenset({"names", "methods", "similarities"})
_FILE_KEYS = frozenset(f.name for f in fields(TetherConfig)) - {"command", "root"}


def load_config(root: Path, *, config_file: Path | None = None, **overrides: object) -> TetherConfig:
    """Load TetherConfig from root, optionally merging tether.toml/yaml.

    An explicit *config_file* is read instead of searching *root*; it
    must exist and parse.  Overrides take precedence over file values.

    Raises:
        ConfigError: The explicit file is missing or malformed, a file
            names an unknown key, or the merged values are invalid.

    """
    if config_file is not None:
        file_config = _read_file(config_file, strict=True)
    else:
        file_config = _read_tether_config(root)
    merged = {**file_config, **overrides}
    for key in _PATH_KEYS & merged.keys():
        value = merged[key]
        if value is not None and not isinstance(value, Path):
            merged[key] = Path(str(value))
    for key in _TUPLE_KEYS & merged.keys():
        value = merged[key]
        merged[key] = tuple(value) if isinstance(value, list | tuple) else (value,)
    return TetherConfig(root=root, **merged)  # type: ignore[arg-type]


def _read_tether_config(root: Path) -> dict[str, object]:
    """Read tether config from yaml/toml if present. Returns empty dict otherwise."""
    for name in ("tether.yaml", "tether.yml", "tether.toml"):
        path = root / name
        if path.is_file():
            return _read_file(path, strict=False)
    return {}


def _read_file(path: Path, *, strict: bool) -> dict[str, object]:
    """Parse *path*; a discovered file that fails to parse is skipped with a notice."""
    if not path.is_file():
        msg = f"config file {path} does not exist"
        raise ConfigError(msg)
    try:
        data = _parse_yaml(path) if path.suffix in (".yaml", ".yml") else _parse_toml(path)
    except ConfigError as exc:
        if strict:
            raise
        get_collector().warn("config_loader", f"{exc}; ignoring {path.name}")
        return {}
    return _flatten_tether_section(data, path)


def _parse_yaml(path: Path) -> dict[str, object]:
    try:
        import yaml
    except ImportError:
        msg = f"{path.name}: reading YAML config needs PyYAML (pip install tether[yaml])"
        raise ConfigError(msg) from None
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        msg = f"{path.name}: invalid YAML: {exc}"
        raise ConfigError(msg) from exc
    if not isinstance(data, dict):
        msg = f"{path.name}: top level must be a mapping"
        raise ConfigError(msg)
    return data


def _parse_toml(path: Path) -> dict[str, object]:
    import tomllib

    try:
        return tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as exc:
        msg = f"{path.name}: invalid TOML: {exc}"
        raise ConfigError(msg) from exc


def _flatten_tether_section(data: dict[str, object], path: Path) -> dict[str, object]:
    """Extract tether.* keys and known flat keys into top-level config."""
    result: dict[str, object] = {}
    section = data.get("tether")
    if isinstance(section, dict):
        for k, v in section.items():
            if k not in _FILE_KEYS:
                msg = f"{path.name}: unknown key {k!r} in [tether]"
                raise ConfigError(msg)
            result[k] = v
    for k, v in data.items():
        if k != "tether" and k in _FILE_KEYS:
            result[k] = v
    return result
