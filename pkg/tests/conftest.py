import pytest

from simplex_lab import set_backend


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    """Run a test under both kernel backends."""
    set_backend(request.param)
    yield request.param
    set_backend(None)


@pytest.fixture
def numpy_backend():
    set_backend("numpy")
    yield
    set_backend(None)
