import pytest

import kduncd as k


@pytest.fixture(scope="session")
def diagram_cache():
    """Session-wide memo of full diagram enumerations, keyed by options."""
    store = {}

    def get(d: int, engine: str = "auto", **kwargs):
        key = (d, engine, tuple(sorted(kwargs.items())))
        if key not in store:
            store[key] = k.enumerate_diagram(k.dft_matrix(d), engine=engine, **kwargs)
        return store[key]

    return get
