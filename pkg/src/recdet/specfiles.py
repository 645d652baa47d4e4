"""Access to the spec files shipped inside the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import RecdetError


def _specs_dir(negative: bool):
    root = resources.files("recdet") / "specs"
    return root / "negative" if negative else root


def available(negative: bool = False) -> tuple[str, ...]:
    """Names (without extension) of the shipped .rec files, sorted."""
    names = [
        entry.name[: -len(".rec")]
        for entry in _specs_dir(negative).iterdir()
        if entry.name.endswith(".rec")
    ]
    return tuple(sorted(names))


def spec_path(name: str, negative: bool = False) -> Path:
    """Filesystem path of a shipped spec, by bare name."""
    entry = _specs_dir(negative) / f"{name}.rec"
    with resources.as_file(entry) as p:
        if not p.is_file():
            raise RecdetError(f"no shipped spec named {name!r}")
        return Path(p)


def spec_text(name: str, negative: bool = False) -> str:
    return spec_path(name, negative=negative).read_text(encoding="utf-8")
