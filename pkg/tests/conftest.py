"""Shared fixtures: small synthetic datasets and benchmark-data discovery."""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest

from tsforest import (
    Dataset,
    generate_noise_dataset,
    generate_shifted_dataset,
    scaled_spec,
    validate_dataset,
)

try:
    from hypothesis import settings

    settings.register_profile("suite", deadline=None, max_examples=60)
    settings.load_profile("suite")
except ImportError:
    pass


@pytest.fixture(scope="session")
def tiny_shifted() -> Dataset:
    """Two separable classes, 16 instances of length 48."""
    return generate_shifted_dataset(scaled_spec(48, per_class=8, seed=3))


@pytest.fixture(scope="session")
def tiny_noise() -> Dataset:
    """Pure noise, 16 instances of length 40."""
    return generate_noise_dataset(scaled_spec(40, per_class=8, seed=5))


@pytest.fixture(scope="session")
def three_class() -> Dataset:
    """Three classes with bumps at different locations, length 30."""
    rng = np.random.default_rng(11)
    rows, labels = [], []
    for cls, lo in ((1, 2), (2, 12), (3, 22)):
        for _ in range(7):
            x = rng.normal(0.0, 1.0, 30)
            x[lo : lo + 6] += 3.0
            rows.append(x)
            labels.append(cls)
    return validate_dataset(rows, labels)


def ucr_dir() -> Path | None:
    """Directory of benchmark TRAIN/TEST files, if one is present.

    Checks the TSF_UCR_DIR environment variable first, then data/ucr under
    the repository root. Returns None when neither exists.
    """
    env = os.environ.get("TSF_UCR_DIR")
    if env and Path(env).is_dir():
        return Path(env)
    local = Path(__file__).resolve().parent.parent / "data" / "ucr"
    if local.is_dir():
        return local
    return None


def find_ucr_pair(name: str) -> tuple[Path, Path] | None:
    """Locate <name>_TRAIN / <name>_TEST files by case-insensitive stem."""
    root = ucr_dir()
    if root is None:
        return None
    want = name.replace("_", "").replace("-", "").lower()
    train = None
    for p in sorted(root.rglob("*")):
        if not p.is_file():
            continue
        stem = p.stem.replace("_", "").replace("-", "").lower()
        if stem == want + "train":
            train = p
            break
    if train is None:
        return None
    for cand in sorted(train.parent.iterdir()):
        stem = cand.stem.replace("_", "").replace("-", "").lower()
        if cand.is_file() and stem == want + "test":
            return train, cand
    return None
