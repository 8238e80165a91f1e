from pathlib import Path

import pytest

from abslog import specfile

REPO = Path(__file__).resolve().parent.parent
SPECS = REPO / "specs"
DATA = Path(__file__).resolve().parent / "data"

BUILTIN_NAMES = ("parity", "sign", "interval", "diamond", "threechain", "m3",
                 "octagon-c1")


def load_builtin(name: str):
    return specfile.load_path(SPECS / f"{name}.spec")


@pytest.fixture(scope="session")
def parity():
    return load_builtin("parity")


@pytest.fixture(scope="session")
def sign():
    return load_builtin("sign")


@pytest.fixture(scope="session")
def diamond():
    return load_builtin("diamond")


@pytest.fixture(scope="session")
def threechain():
    return load_builtin("threechain")


@pytest.fixture(scope="session")
def m3():
    return load_builtin("m3")


@pytest.fixture(scope="session")
def interval():
    return load_builtin("interval")


@pytest.fixture(scope="session")
def builtins():
    return {name: load_builtin(name) for name in BUILTIN_NAMES}
