"""Expected moduli dimensions and Riemann-Roch bookkeeping.

The expected dimension of the Higgs moduli space for a semisimple group
over a genus-g curve is (g - 1) times the complex dimension of the
complexified group; the orthogonal real form is excluded because its
reductive-but-not-semisimple complexification leaves the parameter
normalization undefined here.
"""
from __future__ import annotations

from .bundle import Group, ModelError


class NonSemisimpleGroup(ModelError):
    """Raised for groups outside the semisimple dimension table."""


def group_complex_dimension(group, n: int) -> int:
    """Complex dimension of the complexified group with parameter n."""
    group = Group(group)
    if n < 1:
        raise ModelError("group parameter n must be positive")
    if group is Group.SLNC:
        return n * n - 1
    if group in (Group.SP2NC, Group.SP2NR):
        return n * (2 * n + 1)
    raise NonSemisimpleGroup(
        "the orthogonal real form complexifies to a group with "
        "positive-dimensional center; no expected-dimension normal form "
        "is provided for it"
    )


def expected_dimension(group, n: int, genus: int) -> int:
    """(genus - 1) times the complex group dimension; needs genus >= 2."""
    if genus < 2:
        raise ModelError("expected dimension is defined for genus >= 2")
    return (genus - 1) * group_complex_dimension(group, n)


def euler_char(rank: int, degree: int, genus: int) -> int:
    """Euler characteristic of a rank/degree bundle over a genus-g curve."""
    if rank < 1:
        raise ModelError("rank must be positive")
    if genus < 0:
        raise ModelError("genus must be non-negative")
    return degree + rank * (1 - genus)
