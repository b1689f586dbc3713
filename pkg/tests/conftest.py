import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from burnside.groups import builtin


@pytest.fixture(scope="session")
def named_groups():
    specs = ["cyclic:2", "cyclic:4", "cyclic:6", "sym:3", "dihedral:4",
             "quaternion:8", "alt:4", "sym:4", "alt:5"]
    return {spec: builtin(spec) for spec in specs}


def group(named, spec):
    return named[spec]
