"""Test path glue: prefer the in-tree package with a freshly built extension.

`pip install .` makes this file a no-op. For bare CMake builds
(-DVPQ_BUILD_PYTHON=ON) it copies the newest built `_vpq` module into
python/vpq/ so the package imports without an install step.
"""

import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
PKG_DIR = ROOT / "python"


def _ensure_extension():
    target_dir = PKG_DIR / "vpq"
    built = sorted((ROOT / "build").glob("**/_vpq*.so"),
                   key=lambda p: p.stat().st_mtime)
    in_tree = sorted(target_dir.glob("_vpq*.so"), key=lambda p: p.stat().st_mtime)
    if built and (not in_tree or in_tree[-1].stat().st_mtime < built[-1].stat().st_mtime):
        shutil.copy2(built[-1], target_dir / built[-1].name)
        in_tree = [target_dir / built[-1].name]
    if in_tree:
        sys.path.insert(0, str(PKG_DIR))
    # Otherwise fall through to an installed vpq, if any.


_ensure_extension()
