"""File formats: snapshot CSVs, error-report CSVs, run manifests, config files."""

from .snapshots import SNAPSHOT_HEADER, read_snapshot, write_snapshot
from .reports import (
    read_error_report,
    write_error_report,
    write_micro_macro_table,
)
from .manifest import config_from_manifest, read_manifest, to_manifest, write_manifest
from .configfile import load_config, save_config

__all__ = [
    "SNAPSHOT_HEADER", "read_snapshot", "write_snapshot", "read_error_report",
    "write_error_report", "write_micro_macro_table", "config_from_manifest",
    "read_manifest", "to_manifest", "write_manifest", "load_config", "save_config",
]
