import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(os.environ.get("QHC_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def root():
    return ROOT


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("QHC_CLI") or shutil.which("qhc") or str(ROOT / "build" / "qhc")
    if not pathlib.Path(path).exists():
        pytest.skip("qhc executable not built")
    return path
