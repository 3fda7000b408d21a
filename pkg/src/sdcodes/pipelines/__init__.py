"""Reproduction pipelines, verification helpers and run manifests."""

from .manifest import RunManifest, default_outdir, expected_counts
from .selfdual import classify_selfdual, mass_check, selfdual_mass
from .setups import (group_description, group_names, hamming8, named_group,
                     qr_golay24)

__all__ = [
    "RunManifest", "classify_selfdual", "default_outdir", "expected_counts",
    "group_description", "group_names", "hamming8", "mass_check",
    "named_group", "qr_golay24", "selfdual_mass",
]
