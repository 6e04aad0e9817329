import numpy as np
import pytest

from mcsda import LabeledDataset


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_dataset(rng, dims, n_classes, per_class, spread=3.0, noise=1.0):
    """Small random dataset with Gaussian class clusters."""
    blocks = []
    labels = []
    for c in range(n_classes):
        mean = rng.normal(0.0, spread, size=dims)
        blocks.append(mean + rng.normal(0.0, noise, size=(per_class, *dims)))
        labels.extend([c + 1] * per_class)
    return LabeledDataset(
        samples=np.concatenate(blocks, axis=0),
        labels=np.asarray(labels),
        n_classes=n_classes,
    )


def assert_scatter_valid(s, rel_tol=1e-10, psd_tol=1e-8):
    """Symmetry and positive semidefiniteness of a scatter matrix."""
    s = np.asarray(s)
    scale = max(np.abs(s).max(), 1e-300)
    assert np.abs(s - s.T).max() <= rel_tol * scale
    eigvals = np.linalg.eigvalsh(0.5 * (s + s.T))
    norm = np.linalg.norm(s)
    assert eigvals.min() >= -psd_tol * max(norm, 1e-300)
