import os
import sys

import pytest

# Add project root to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.documents import load_interpretation, load_tbox
from src.features import AnalogyStructure, FeatureSpace
from src.model import Interpretation


@pytest.fixture(scope="module")
def zoo():
    return load_interpretation("fx-zoo")


@pytest.fixture(scope="module")
def spec():
    return load_interpretation("fx-spec")


@pytest.fixture(scope="module")
def example1():
    return load_tbox("example1")


@pytest.fixture(scope="module")
def example2():
    return load_tbox("example2")


def single_domain(atoms, features=("f", "g"), mode="strong"):
    """One domain, only the full feature set forbidden: every φ value is realizable"""
    space = FeatureSpace.build(list(features), [list(features)], [list(features)])
    analogy = AnalogyStructure.build(space)
    return Interpretation(space, analogy, mode, {name: frozenset(fs) for name, fs in atoms.items()})
