"""Weighted models: products of projective spaces with a rational torus action.

A model records, for each projective-space factor, the list of weights of the
torus action on the underlying coordinates, together with a positive definite
form on the (rank-dimensional) parameter space. Supports of points give
profiles; Minkowski sums of the chosen weights give the finite point sets
whose exact convex projections stratify the model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .geometry import (
    BilinearForm,
    ProjectionCertificate,
    closest_point_to_origin,
    identity_form,
    origin_in_interior,
)
from .linalg import Vector, frac, vscale, vsub


@dataclass(frozen=True)
class WeylGroup:
    """A finite group of exact linear symmetries with determinant signs."""

    name: str
    elements: tuple[tuple[tuple[tuple[Fraction, ...], ...], int], ...]

    @staticmethod
    def act(matrix: tuple[tuple[Fraction, ...], ...], v: Vector) -> Vector:
        return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0))
                     for row in matrix)


def sl2_weyl() -> WeylGroup:
    one = ((Fraction(1),),)
    neg = ((Fraction(-1),),)
    return WeylGroup("sl2", ((one, 1), (neg, -1)))


def sl3_torus_weyl() -> WeylGroup:
    """Symmetric group S3 acting on the rank-2 root space of SL(3).

    Matrices are written in the simple-root basis v1 = (1,-1,0),
    v2 = (0,1,-1); signs are determinants (transpositions negative).
    """
    def m(rows):
        return tuple(tuple(Fraction(x) for x in row) for row in rows)

    return WeylGroup("sl3-torus-weyl", (
        (m([[1, 0], [0, 1]]), 1),
        (m([[-1, 1], [0, 1]]), -1),
        (m([[1, 0], [1, -1]]), -1),
        (m([[0, -1], [-1, 0]]), -1),
        (m([[0, -1], [1, -1]]), 1),
        (m([[-1, 1], [-1, 0]]), 1),
    ))


WEYL_GROUPS = {
    "sl2": sl2_weyl,
    "sl3-torus-weyl": sl3_torus_weyl,
}


@dataclass(frozen=True)
class WeightedModel:
    rank: int
    factors: tuple[tuple[Vector, ...], ...]
    form: BilinearForm
    weyl: WeylGroup | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.form.rank != self.rank:
            raise ValueError("form rank does not match model rank")
        if not self.factors:
            raise ValueError("model needs at least one factor")
        for fac in self.factors:
            if not fac:
                raise ValueError("each factor needs at least one weight")
            for w in fac:
                if len(w) != self.rank:
                    raise ValueError("weight dimension does not match rank")

    @property
    def factor_sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    @property
    def slots(self) -> int:
        return sum(self.factor_sizes)


def weighted_model(rank: int, factors: Iterable[Iterable[Iterable]],
                   form: BilinearForm | None = None,
                   weyl: WeylGroup | None = None) -> WeightedModel:
    facs = tuple(tuple(tuple(frac(x) for x in w) for w in f) for f in factors)
    return WeightedModel(rank, facs, form or identity_form(rank), weyl)


def projective_space_model(weights: Iterable, weyl: WeylGroup | None = None) -> WeightedModel:
    fac = tuple((frac(w),) for w in weights)
    return WeightedModel(1, (fac,), identity_form(1), weyl)


def line_product_model(n: int, weyl: WeylGroup | None = None) -> WeightedModel:
    if n < 1:
        raise ValueError("need at least one line factor")
    fac = ((Fraction(1),), (Fraction(-1),))
    return WeightedModel(1, tuple(fac for _ in range(n)), identity_form(1), weyl)


# ---------------------------------------------------------------------------
# profiles and their classification

Profile = tuple[tuple[int, ...], ...]


def support_of_point(coords: Sequence) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(coords) if frac(c) != 0)


def profile_of_point(model: WeightedModel, point: Sequence[Sequence]) -> Profile:
    if len(point) != len(model.factors):
        raise ValueError("point must have one coordinate tuple per factor")
    prof = []
    for coords, fac in zip(point, model.factors):
        if len(coords) != len(fac):
            raise ValueError("coordinate count does not match factor size")
        supp = support_of_point(coords)
        if not supp:
            raise ValueError("projective coordinates cannot all vanish")
        prof.append(supp)
    return tuple(prof)


def _check_profile(model: WeightedModel, profile: Profile):
    if len(profile) != len(model.factors):
        raise ValueError("profile must list one support per factor")
    for supp, fac in zip(profile, model.factors):
        if not supp:
            raise ValueError("empty support")
        if any(not (0 <= k < len(fac)) for k in supp):
            raise ValueError("support index out of range")


def minkowski_points(model: WeightedModel, profile: Profile) -> tuple[Vector, ...]:
    """Deduplicated sums of one selected weight per factor, sorted."""
    _check_profile(model, profile)
    acc: set[Vector] = {tuple(Fraction(0) for _ in range(model.rank))}
    for supp, fac in zip(profile, model.factors):
        step = {fac[k] for k in supp}
        acc = {tuple(a + b for a, b in zip(s, w)) for s in acc for w in step}
    return tuple(sorted(acc))


@lru_cache(maxsize=None)
def _closest_cached(points: tuple[Vector, ...], form: BilinearForm) -> ProjectionCertificate:
    return closest_point_to_origin(points, form)


@dataclass(frozen=True)
class ProfileClass:
    profile: Profile
    points: tuple[Vector, ...]
    certificate: ProjectionCertificate
    semistable: bool
    stable: bool

    @property
    def beta(self) -> Vector:
        return self.certificate.beta


def classify_profile(model: WeightedModel, profile: Profile) -> ProfileClass:
    points = minkowski_points(model, profile)
    cert = _closest_cached(points, model.form)
    semistable = all(x == 0 for x in cert.beta)
    stable = semistable and origin_in_interior(points, model.rank)
    return ProfileClass(tuple(tuple(s) for s in profile), points, cert, semistable, stable)


def is_semistable(model: WeightedModel, point: Sequence[Sequence]) -> bool:
    return classify_profile(model, profile_of_point(model, point)).semistable


def is_stable(model: WeightedModel, point: Sequence[Sequence]) -> bool:
    return classify_profile(model, profile_of_point(model, point)).stable


# ---------------------------------------------------------------------------
# the index set


@dataclass(frozen=True)
class IndexStratum:
    beta: Vector
    certificate: ProjectionCertificate
    witness_profile: Profile
    witness_points: tuple[Vector, ...]


def _value_subsets(fac: tuple[Vector, ...]) -> list[tuple[tuple[int, ...], tuple[Vector, ...]]]:
    """Nonempty subsets of the distinct weight values of one factor.

    Each subset is returned as (an index support realizing it, the values).
    Index supports pick the first index bearing each chosen value, so
    witness profiles are deterministic.
    """
    first_index: dict[Vector, int] = {}
    for i, w in enumerate(fac):
        first_index.setdefault(w, i)
    values = sorted(first_index)
    out = []
    for size in range(1, len(values) + 1):
        for combo in itertools.combinations(values, size):
            supp = tuple(sorted(first_index[v] for v in combo))
            out.append((supp, combo))
    return out


def enumerate_profiles(model: WeightedModel):
    """Canonical support profiles, one per orbit of identical-factor swaps.

    Permuting identical factors does not change a profile's Minkowski sum,
    so enumerating value subsets up to such permutations loses no strata.
    """
    groups: dict[tuple[Vector, ...], list[int]] = {}
    for pos, fac in enumerate(model.factors):
        groups.setdefault(fac, []).append(pos)
    group_items = sorted(groups.items(), key=lambda kv: kv[1][0])
    group_subsets = [_value_subsets(fac) for fac, _ in group_items]
    per_group_choices = []
    for (_, positions), subsets in zip(group_items, group_subsets):
        per_group_choices.append(
            list(itertools.combinations_with_replacement(range(len(subsets)), len(positions))))
    for combo in itertools.product(*per_group_choices):
        profile: list[tuple[int, ...]] = [()] * len(model.factors)
        for (_, positions), subsets, chosen in zip(group_items, group_subsets, combo):
            for pos, subset_idx in zip(positions, chosen):
                profile[pos] = subsets[subset_idx][0]
        yield tuple(profile)


def index_set(model: WeightedModel) -> tuple[IndexStratum, ...]:
    """All nearest points of Minkowski hulls of support profiles."""
    found: dict[Vector, IndexStratum] = {}
    for profile in enumerate_profiles(model):
        cls = classify_profile(model, profile)
        if cls.beta not in found:
            found[cls.beta] = IndexStratum(cls.beta, cls.certificate,
                                           cls.profile, cls.points)
    return tuple(found[b] for b in sorted(found))


def index_betas(model: WeightedModel) -> tuple[Vector, ...]:
    return tuple(s.beta for s in index_set(model))


# ---------------------------------------------------------------------------
# critical components of a stratum


@dataclass(frozen=True)
class CriticalComponent:
    beta: Vector
    values: tuple[Fraction, ...]
    attaining: tuple[tuple[int, ...], ...]


def critical_components(model: WeightedModel, beta: Sequence) -> tuple[CriticalComponent, ...]:
    """Fixed-locus components where the stratum's moment pairing is attained.

    One component per tuple of per-factor pairing values summing to
    <beta, beta>; the attaining sets list which coordinates realize each
    value.
    """
    b = tuple(frac(x) for x in beta)
    if len(b) != model.rank:
        raise ValueError("beta dimension does not match model rank")
    target = model.form.norm2(b)
    per_factor: list[list[Fraction]] = []
    for fac in model.factors:
        vals = sorted({model.form.inner(w, b) for w in fac})
        per_factor.append(vals)
    mins = [v[0] for v in per_factor]
    maxs = [v[-1] for v in per_factor]
    suffix_min = [Fraction(0)] * (len(per_factor) + 1)
    suffix_max = [Fraction(0)] * (len(per_factor) + 1)
    for i in range(len(per_factor) - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + mins[i]
        suffix_max[i] = suffix_max[i + 1] + maxs[i]

    out: list[CriticalComponent] = []

    def rec(i: int, acc: Fraction, chosen: list[Fraction]):
        if i == len(per_factor):
            if acc == target:
                attaining = tuple(
                    tuple(k for k, w in enumerate(fac)
                          if model.form.inner(w, b) == v)
                    for fac, v in zip(model.factors, chosen))
                out.append(CriticalComponent(b, tuple(chosen), attaining))
            return
        for v in per_factor[i]:
            lo = acc + v + suffix_min[i + 1]
            hi = acc + v + suffix_max[i + 1]
            if lo <= target <= hi:
                chosen.append(v)
                rec(i + 1, acc + v, chosen)
                chosen.pop()

    rec(0, Fraction(0), [])
    out.sort(key=lambda c: c.values)
    return tuple(out)


def stratum_codim(model: WeightedModel, component: CriticalComponent) -> int:
    """Real codimension: twice the count of weights pairing below the
    component's value in each factor."""
    total = 0
    for fac, v in zip(model.factors, component.values):
        for w in fac:
            if model.form.inner(w, component.beta) < v:
                total += 1
    return 2 * total


def shifted_submodel(model: WeightedModel, component: CriticalComponent) -> WeightedModel:
    """Model carried by a critical component: attaining weights, shifted so
    the component pairs to zero against its own beta."""
    b = component.beta
    nb = model.form.norm2(b)
    if nb == 0:
        raise ValueError("the zero stratum has no shifted submodel")
    new_factors = []
    for fac, att, v in zip(model.factors, component.attaining, component.values):
        shift = vscale(v / nb, b)
        new_factors.append(tuple(vsub(fac[k], shift) for k in att))
    return WeightedModel(model.rank, tuple(new_factors), model.form, None)
