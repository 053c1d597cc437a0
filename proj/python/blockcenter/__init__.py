"""Centers of p-blocks of small finite group algebras.

Thin wrapper around the compiled _core module; points the engine at the
packaged quiver presentations when installed as a wheel.
"""

import os
from pathlib import Path

_packaged_data = Path(__file__).parent / "data"
if _packaged_data.is_dir():
    os.environ.setdefault("BLOCKCENTER_DATA", str(_packaged_data))

try:
    from ._core import (  # noqa: E402,F401
        BlockcenterError,
        __version__,
        analyze_blocks,
        group_info,
        loewy_length_zfg,
        quiver_case,
        survey,
        survey_preset,
        verify_manifest,
    )
except ImportError:  # development layout: _core next to the build tree
    from _core import (  # noqa: E402,F401
        BlockcenterError,
        __version__,
        analyze_blocks,
        group_info,
        loewy_length_zfg,
        quiver_case,
        survey,
        survey_preset,
        verify_manifest,
    )

__all__ = [
    "BlockcenterError",
    "__version__",
    "analyze_blocks",
    "group_info",
    "loewy_length_zfg",
    "quiver_case",
    "survey",
    "survey_preset",
    "verify_manifest",
]
