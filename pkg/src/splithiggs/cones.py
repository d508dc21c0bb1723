"""Rational polyhedral cones of admissible flag weights.

A cone is given by inequality normals h (constraints h.x <= 0) and equality
vectors (v.x = 0).  Two ray engines are provided: a fast enumerator for the
special normal shapes produced by weight cones (coordinates of extremal rays
lie in {-1,0,1} up to the central projection used for trace-zero weights),
and a generic double-description construction used as a cross-check oracle.
Rays are returned as primitive integer vectors, canonicalized modulo the
lineality space, lexicographically sorted.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .bundle import Group, HiggsPair, Flag, step_index
from .linalg import (
    Vector,
    dot,
    feasible_nonneg_combination,
    is_zero,
    primitive,
    rank,
    reduce_mod_span,
    rref,
    scale,
    sub,
    vec,
)


class MalformedNormal(ValueError):
    pass


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ConeSpec:
    """dim-dimensional cone {x : h.x <= 0 for h in ineqs, v.x = 0 for v in eqs}."""
    dim: int
    ineqs: Tuple[Vector, ...]
    eqs: Tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "ineqs", tuple(vec(h) for h in self.ineqs))
        object.__setattr__(self, "eqs", tuple(vec(e) for e in self.eqs))
        for h in self.ineqs + self.eqs:
            if len(h) != self.dim:
                raise MalformedNormal("constraint length differs from cone dimension")
        if any(is_zero(h) for h in self.ineqs):
            raise MalformedNormal("zero inequality normal")


def cone_contains(cone: ConeSpec, x: Sequence) -> bool:
    return all(dot(h, x) <= 0 for h in cone.ineqs) and all(
        dot(e, x) == 0 for e in cone.eqs
    )


@lru_cache(maxsize=None)
def lineality_space(cone: ConeSpec) -> Tuple[Vector, ...]:
    """Basis of the largest subspace inside the cone (all constraints tight)."""
    basis = nullspace_of(cone.ineqs + cone.eqs, cone.dim)
    return tuple(basis)


def nullspace_of(rows: Sequence[Vector], dim: int) -> List[Vector]:
    from .linalg import nullspace

    return nullspace(rows, dim)


def _classify_ineq(h: Vector) -> None:
    p = primitive(h)
    support = [a for a in p if a != 0]
    if len(support) == 1 and support[0] in (1, -1):
        return
    if len(support) == 2 and sorted(support) in ([-1, 1], [1, 1], [-1, -1]):
        return
    raise MalformedNormal(f"inequality normal {h} outside the special shapes")


def _classify_eqs(eqs: Sequence[Vector], dim: int):
    """Split equalities into index-pair constraints, zero-coordinate
    constraints, and at most one all-positive (trace-type) constraint."""
    pairs: List[Tuple[int, int]] = []
    zeros: List[int] = []
    positive: List[Vector] = []
    for e in eqs:
        p = primitive(e)
        nz = [i for i, a in enumerate(p) if a != 0]
        if len(nz) == 1:
            zeros.append(nz[0])
        elif len(nz) == 2 and p[nz[0]] == p[nz[1]] and abs(p[nz[0]]) == 1:
            pairs.append((nz[0], nz[1]))
        elif len(nz) == dim and all(a > 0 for a in p):
            positive.append(vec(p))
        else:
            raise MalformedNormal(f"equality {e} outside the special shapes")
    if len(positive) > 1:
        raise MalformedNormal("more than one trace-type equality")
    if positive and (pairs or zeros):
        raise MalformedNormal("trace-type equality cannot mix with pair equalities")
    return pairs, zeros, positive


def _special_members(cone: ConeSpec, pairs, zeros) -> List[Vector]:
    out: List[Vector] = []
    for cand in itertools.product((-1, 0, 1), repeat=cone.dim):
        if all(a == 0 for a in cand):
            continue
        if any(cand[i] + cand[j] != 0 for (i, j) in pairs):
            continue
        if any(cand[i] != 0 for i in zeros):
            continue
        v = vec(cand)
        if all(dot(h, v) <= 0 for h in cone.ineqs):
            out.append(v)
    return out


def _canonical_reps(members: Sequence[Vector], lin: Sequence[Vector]) -> List[Vector]:
    red, piv = rref(lin)
    reps = set()
    for r in members:
        q = primitive(reduce_mod_span(r, red, piv))
        if any(q):
            reps.add(q)
    return sorted(reps)


def _extremal_filter(reps: Sequence[Vector]) -> List[Vector]:
    out = []
    for i, r in enumerate(reps):
        others = [q for j, q in enumerate(reps) if j != i]
        if not others or not feasible_nonneg_combination(others, r):
            out.append(r)
    return out


@lru_cache(maxsize=None)
def extremal_rays_special(cone: ConeSpec) -> Tuple[Vector, ...]:
    """Extremal rays via {-1,0,1} candidate enumeration.

    Requires the special normal shapes of weight cones.  A single trace-type
    equality (all-positive coefficients) is handled by relaxing it, which
    leaves a cone invariant under the all-ones direction, and projecting the
    relaxed generators back onto the equality hyperplane.
    """
    if cone.dim > 12:
        raise DimensionTooLarge("special enumeration capped at dimension 12")
    for h in cone.ineqs:
        _classify_ineq(h)
    pairs, zeros, positive = _classify_eqs(cone.eqs, cone.dim)
    if positive:
        ones = vec([1] * cone.dim)
        if any(dot(h, ones) != 0 for h in cone.ineqs):
            raise MalformedNormal(
                "trace-type equality requires all-ones-invariant inequalities"
            )
        relaxed = ConeSpec(cone.dim, cone.ineqs, ())
        m = positive[0]
        m_ones = dot(m, ones)
        members = [
            sub(scale(r, m_ones), scale(ones, dot(m, r)))
            for r in _special_members(relaxed, [], [])
        ]
        members = [r for r in members if not is_zero(r)]
    else:
        members = _special_members(cone, pairs, zeros)
    reps = _canonical_reps(members, lineality_space(cone))
    return tuple(sorted(map(tuple, _extremal_filter(reps))))


@dataclass(frozen=True)
class RaysResult:
    lineality: Tuple[Vector, ...]
    rays: Tuple[Vector, ...]


def brute_rays_oracle(cone: ConeSpec) -> RaysResult:
    """Double-description enumeration; no shape assumptions.  Test oracle."""
    if cone.dim > 8:
        raise DimensionTooLarge("double description capped at dimension 8")
    dim = cone.dim
    constraints: List[Vector] = list(cone.ineqs)
    for e in cone.eqs:
        constraints.append(e)
        constraints.append(scale(e, -1))
    lin: List[Vector] = [vec([1 if j == i else 0 for j in range(dim)]) for i in range(dim)]
    rays: List[Vector] = []
    inserted: List[Vector] = []
    for a in constraints:
        v0 = next((v for v in lin if dot(a, v) != 0), None)
        if v0 is not None:
            av0 = dot(a, v0)
            lin = [sub(v, scale(v0, dot(a, v) / av0)) for v in lin if v is not v0]
            lin = [w for w in (vec(primitive(v)) for v in lin) if not is_zero(w)]
            rays = [sub(r, scale(v0, dot(a, r) / av0)) for r in rays]
            r0 = scale(v0, -1) if av0 > 0 else v0
            rays.append(r0)
            rays = [vec(primitive(r)) for r in rays]
        else:
            pos = [r for r in rays if dot(a, r) > 0]
            neg = [r for r in rays if dot(a, r) < 0]
            zero = [r for r in rays if dot(a, r) == 0]
            if pos:
                keep = zero + neg
                for p, n in itertools.product(pos, neg):
                    if _adjacent(p, n, inserted, dim, len(lin)):
                        w = sub(scale(n, dot(a, p)), scale(p, dot(a, n)))
                        keep.append(vec(primitive(w)))
                seen = set()
                rays = []
                for r in keep:
                    if r not in seen:
                        seen.add(r)
                        rays.append(r)
        inserted.append(a)
    red, piv = rref(lin)
    canon = set()
    for r in rays:
        q = primitive(reduce_mod_span(r, red, piv))
        if any(q):
            canon.add(q)
    lin_basis = tuple(sorted(primitive(v) for v in red))
    return RaysResult(lin_basis, tuple(sorted(canon)))


def _adjacent(p: Vector, n: Vector, inserted: Sequence[Vector], dim: int, lin_dim: int) -> bool:
    active = [a for a in inserted if dot(a, p) == 0 and dot(a, n) == 0]
    return rank(active) == dim - lin_dim - 2


def nonneg_on_cone(d: Sequence, cone: ConeSpec) -> Optional[Vector]:
    """None if d.x >= 0 holds on the whole cone; else a violating direction.

    The functional is non-negative on the cone iff it is >= 0 on every
    extremal ray and exactly 0 on the lineality space.  The witness is the
    lexicographically least primitive violating vector.
    """
    bad: List[Vector] = []
    for r in extremal_rays_special(cone):
        if dot(d, r) < 0:
            bad.append(r)
    for v in lineality_space(cone):
        val = dot(d, v)
        if val != 0:
            w = v if val < 0 else scale(v, -1)
            bad.append(primitive(w))
    return min(bad) if bad else None


# ---------------------------------------------------------------------------
# Weight cones of flags


def weight_cone(pair: HiggsPair, flag: Flag) -> ConeSpec:
    """Cone of admissible step weights for a flag.

    Ordering constraints chain the steps; the group contributes equalities
    (weight-reversal pairing for symplectic/orthogonal forms, the rank-weighted
    zero-sum for trace-free groups); each supported entry contributes its
    step-space normal unless the ordering already implies it.  Membership
    agrees pointwise with pattern_compatible.
    """
    k = len(flag)
    steps = step_index(flag, pair.rank)
    ineqs = [_unit_diff(j, j + 1, k) for j in range(k - 1)]
    seen = set(map(tuple, ineqs))

    def add(normal: Vector):
        p = vec(primitive(normal))
        if tuple(p) not in seen:
            seen.add(tuple(p))
            ineqs.append(p)

    pat = pair.pattern
    for (t, s) in pat.endo:
        jt, js = steps[t], steps[s]
        if jt > js:
            add(_unit_diff(jt, js, k))
    for (a, b) in pat.beta:
        add(_unit_sum(steps[a], steps[b], k, 1))
    for (a, b) in pat.gamma:
        add(_unit_sum(steps[a], steps[b], k, -1))

    eqs: List[Vector] = []
    if pair.group in (Group.SP2NC, Group.GLNR):
        for i in range(k // 2):
            eqs.append(_unit_sum(i, k - 1 - i, k, 1))
        if k % 2 == 1:
            mid = [Fraction(0)] * k
            mid[k // 2] = Fraction(1)
            eqs.append(tuple(mid))
    elif pair.group is Group.SLNC:
        sizes = [len(flag[0])] + [len(b) - len(a) for a, b in zip(flag, flag[1:])]
        eqs.append(vec(sizes))
    return ConeSpec(k, tuple(ineqs), tuple(eqs))


def _unit_diff(i: int, j: int, k: int) -> Vector:
    out = [Fraction(0)] * k
    out[i] += 1
    out[j] -= 1
    return tuple(out)


def _unit_sum(i: int, j: int, k: int, sign: int) -> Vector:
    out = [Fraction(0)] * k
    out[i] += sign
    out[j] += sign
    return tuple(vec(primitive(out)))
