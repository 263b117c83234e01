"""Bundled job files reproducing the worked examples."""

from importlib import resources


def _jobs():
    return resources.files(__package__).joinpath("jobs")


def fixture_names():
    return sorted(p.name[:-4] for p in _jobs().iterdir() if p.name.endswith(".job"))


def fixture_text(name):
    path = _jobs().joinpath(name + ".job")
    if not path.is_file():
        raise KeyError(f"unknown fixture {name!r} (available: {', '.join(fixture_names())})")
    return path.read_text(encoding="utf-8")
