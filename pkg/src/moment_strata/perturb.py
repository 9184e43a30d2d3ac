"""Generic perturbations of weighted models.

Shifting the first factor's weights by a small rational vector breaks all
hull degeneracies when the shift is generic, making every semistable profile
stable. The routines here certify genericity exactly, propose certified
perturbations from a deterministic ladder, and verify that the perturbed
stratification refines the original one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EpsilonSearchFailed, RefinementViolation
from .linalg import Vector, frac, vsub
from .models import (
    WeightedModel,
    classify_profile,
    enumerate_profiles,
    index_set,
)

# candidate denominators for proposed perturbations, in search order
_PRIME_LADDER = (97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
                 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
                 197, 199, 211, 223, 227)


def perturbed_model(model: WeightedModel, epsilon: Sequence) -> WeightedModel:
    """Shift every weight of the first factor by -epsilon."""
    eps = tuple(frac(x) for x in epsilon)
    if len(eps) != model.rank:
        raise ValueError("epsilon dimension does not match model rank")
    first = tuple(vsub(w, eps) for w in model.factors[0])
    return WeightedModel(model.rank, (first,) + model.factors[1:], model.form,
                         model.weyl)


def is_generic(model: WeightedModel, epsilon: Sequence) -> bool:
    """True when every semistable profile of the perturbed model is stable."""
    shifted = perturbed_model(model, epsilon)
    for profile in enumerate_profiles(shifted):
        cls = classify_profile(shifted, profile)
        if cls.semistable and not cls.stable:
            return False
    return True


def _generic_witness(model: WeightedModel, epsilon: Sequence):
    shifted = perturbed_model(model, epsilon)
    for profile in enumerate_profiles(shifted):
        cls = classify_profile(shifted, profile)
        if cls.semistable and not cls.stable:
            return profile
    return None


@dataclass(frozen=True)
class EpsilonProposal:
    epsilon: Vector
    denominator: int
    norm_bound: Fraction  # strict upper bound |epsilon|^2 must satisfy


def propose_epsilon(model: WeightedModel) -> EpsilonProposal:
    """First certified perturbation on the ladder (1/M, 1/M^2, ..., 1/M^rank).

    Certification requires genericity and |epsilon|^2 < |beta|^2 / 4 for
    every nonzero beta in the model's index set. Models without nonzero
    strata provide no scale to certify against, so the search fails with a
    witness per candidate.
    """
    nonzero = [s.beta for s in index_set(model) if any(x != 0 for x in s.beta)]
    if not nonzero:
        raise EpsilonSearchFailed(
            "model has no nonzero stratum to set the perturbation scale",
            witness={"index_set": "only the zero stratum"})
    bound = min(model.form.norm2(b) for b in nonzero) / 4
    failures = []
    for m in _PRIME_LADDER:
        eps = tuple(Fraction(1, m ** (k + 1)) for k in range(model.rank))
        if model.form.norm2(eps) >= bound:
            failures.append({"denominator": m, "reason": "norm bound"})
            continue
        witness = _generic_witness(model, eps)
        if witness is not None:
            failures.append({"denominator": m, "reason": "not generic",
                             "profile": witness})
            continue
        return EpsilonProposal(eps, m, bound)
    raise EpsilonSearchFailed("no candidate perturbation certified", witness=failures)


@dataclass(frozen=True)
class RefinementReport:
    epsilon: Vector
    mapping: tuple[tuple[Vector, Vector], ...]  # (perturbed beta, original beta)
    fibers: tuple[tuple[Vector, tuple[Vector, ...]], ...]

    def fiber_over(self, beta: Sequence) -> tuple[Vector, ...]:
        key = tuple(frac(x) for x in beta)
        for parent, eps_betas in self.fibers:
            if parent == key:
                return eps_betas
        return ()


def refinement_report(model: WeightedModel, epsilon: Sequence) -> RefinementReport:
    """Check that perturbed strata refine original strata, profile by profile.

    Every support profile has a nearest point before and after perturbation;
    the assignment (perturbed beta -> original beta) must be well defined.
    Two profiles sharing a perturbed beta but disagreeing on the original
    one are reported as a RefinementViolation witness.
    """
    eps = tuple(frac(x) for x in epsilon)
    shifted = perturbed_model(model, eps)
    mapping: dict[Vector, Vector] = {}
    first_profile: dict[Vector, tuple] = {}
    for profile in enumerate_profiles(shifted):
        eps_beta = classify_profile(shifted, profile).beta
        orig_beta = classify_profile(model, profile).beta
        if eps_beta in mapping:
            if mapping[eps_beta] != orig_beta:
                raise RefinementViolation(
                    "perturbed stratum meets two original strata",
                    witness={
                        "perturbed_beta": eps_beta,
                        "original_betas": (mapping[eps_beta], orig_beta),
                        "profiles": (first_profile[eps_beta], profile),
                    })
        else:
            mapping[eps_beta] = orig_beta
            first_profile[eps_beta] = profile
    fibers: dict[Vector, list[Vector]] = {}
    for eb, ob in mapping.items():
        fibers.setdefault(ob, []).append(eb)
    return RefinementReport(
        eps,
        tuple((eb, mapping[eb]) for eb in sorted(mapping)),
        tuple((ob, tuple(sorted(ebs))) for ob, ebs in sorted(fibers.items())),
    )
