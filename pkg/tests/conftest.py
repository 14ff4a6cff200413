import numpy as np
import pytest

from tenmom import prim_to_cons


def random_primitives(rng, n, rho_range=(0.1, 3.0), v_range=(-2.0, 2.0),
                      p_range=(0.1, 3.0), corr=0.9):
    """n random admissible primitive states (p12 bounded by the diagonal)."""
    V = np.empty((n, 6))
    V[:, 0] = rng.uniform(*rho_range, n)
    V[:, 1] = rng.uniform(*v_range, n)
    V[:, 2] = rng.uniform(*v_range, n)
    V[:, 3] = rng.uniform(*p_range, n)
    V[:, 5] = rng.uniform(*p_range, n)
    V[:, 4] = rng.uniform(-corr, corr, n) * np.sqrt(V[:, 3] * V[:, 5])
    return V


def random_states(rng, n, **kw):
    return prim_to_cons(random_primitives(rng, n, **kw))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
