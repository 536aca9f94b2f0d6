import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from depthtest import DepthKind, load_csv, skulls_path

ALL_KINDS = (
    DepthKind("mahalanobis"),
    DepthKind("spatial"),
    DepthKind("projection", direction_count=128, direction_seed=7),
)


@pytest.fixture(params=ALL_KINDS, ids=lambda k: k.kind)
def any_kind(request):
    return request.param


@pytest.fixture(scope="session")
def skulls():
    return load_csv(skulls_path(), "epoch")


@pytest.fixture()
def rng():
    return np.random.default_rng(20260808)
