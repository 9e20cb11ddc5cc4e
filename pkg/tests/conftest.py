from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from parakod.gaussian import Gaussian
from parakod.lie import StructureConstants

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(bound=5, max_den=4):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, max_den))


def gaussians(bound=5, max_den=4):
    return st.builds(Gaussian, rationals(bound, max_den), rationals(bound, max_den))


@st.composite
def structure_tables(draw, min_dim=1, max_dim=4):
    """Arbitrary antisymmetric tables; the Jacobi identity is not enforced."""
    n = draw(st.integers(min_dim, max_dim))
    keys = [(i, j, k) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(j + 1, n + 1)]
    if not keys:
        return StructureConstants(n, {})
    chosen = draw(st.lists(st.sampled_from(keys), max_size=min(6, len(keys)), unique=True))
    return StructureConstants(n, {key: draw(rationals(3, 3)) for key in chosen})


@st.composite
def invertible_matrices(draw, n, bound=3):
    from parakod.linalg import det
    rows = draw(st.lists(st.lists(rationals(bound, 3), min_size=n, max_size=n), min_size=n, max_size=n))
    if det(rows) == 0:
        # make it invertible deterministically: add a large diagonal
        rows = [[x + (10 if a == b else 0) for b, x in enumerate(r)] for a, r in enumerate(rows)]
    from hypothesis import assume
    assume(det(rows) != 0)
    return rows
