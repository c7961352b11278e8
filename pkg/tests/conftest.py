import numpy as np
import pytest

from depthcue import io
from depthcue.testcards import fixture_set


@pytest.fixture(scope="session")
def fixtures():
    """The 10-scene fixture set as (name, rgb, nearness) triples."""
    return [(name, rgb, near) for name, (rgb, near) in fixture_set()]


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory, fixtures):
    """Fixture scenes written to disk: 8-bit PNG images + PFM disparity."""
    root = tmp_path_factory.mktemp("fixture_images")
    for name, rgb, near in fixtures:
        io.save_image(rgb, str(root / f"{name}.png"), 8)
        # store nearness as a disparity-like plane (larger = nearer)
        io.save_pfm(10.0 + 90.0 * near, str(root / f"{name}.pfm"))
    return root


def approx_image(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol)
