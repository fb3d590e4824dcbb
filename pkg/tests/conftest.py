import pytest

from dewline import ModelParams, generate_scene


@pytest.fixture(scope="session")
def small_scene():
    """A modest default-model scene shared by read-only tests."""
    return generate_scene(ModelParams(n_samples=1500, seed=42))
