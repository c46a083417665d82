import numpy as np
import pytest

from simplicial_gap.certificates import assemble, coeffs_general


@pytest.fixture(scope="session")
def dense_cert():
    """Session cache of densified certificates and their spectra by (g, n).

    The 1024^2 and 1296^2 eigendecompositions are the slowest things the
    suite does; computing each once keeps the whole run inside its budgets.
    """
    store: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}

    def get(g: int, n: int) -> tuple[np.ndarray, np.ndarray]:
        key = (g, n)
        if key not in store:
            y = assemble(coeffs_general(n, g)).densify()
            store[key] = (y, np.linalg.eigvalsh(y))
        return store[key]

    return get
