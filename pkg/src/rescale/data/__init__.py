"""Bundled measurement series."""

from pathlib import Path

_HERE = Path(__file__).resolve().parent

OSD_ISOTROPIC_D3 = _HERE / "osd_isotropic_d3.csv"


def bundled_series_path(name: str = "osd_isotropic_d3.csv") -> Path:
    """Filesystem path of a bundled dataset, usable as a CLI --input."""
    path = _HERE / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled dataset named {name!r}")
    return path
