"""Decide whether equivariant K-theory of X_Sigma matches piecewise Laurent polynomials."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce as fold
from math import gcd, lcm
from typing import Dict, List, Optional

import sympy

from fank.errors import DimensionMismatch, InvariantViolation, NotFwps, Unsupported
from fank.geometry.fan import (
    Fan,
    is_complete,
    is_smooth_fan,
    singularity_report,
)
from fank.geometry.planar import Splitting, check_splitting, complete_2d_splitting
from fank.ideals import contains, sum_of_ideals
from fank.laurent import euler_class
from fank.linalg.lattice import spans_ambient
from fank.linalg.normal_forms import invariant_factors
from fank.piecewise import clump_ideal
from fank.records import Outcome, SingularityReport, Verdict, WeightData

LOGGER = logging.getLogger(__name__)

SMOOTH = "smooth fan"
DISTANT = "distant singular cones"
PLANAR_INCOMPLETE = "2D incomplete fan"
PLANAR_SPANNING = "2D complete, span index 1"
PLANAR_NOT_SPANNING = "2D complete, span index > 1"


@dataclass(frozen=True)
class DistantDecomposition:
    """Sigma = smooth_part u singular_part with overlap the boundaries of the singular cones."""

    smooth_part: Fan
    singular_part: Fan
    overlap: Fan


def distant_decomposition(fan: Fan, report: Optional[SingularityReport] = None) -> DistantDecomposition:
    report = report or singularity_report(fan)
    if not report.has_distant_singular_cones:
        raise Unsupported("the fan does not have distant singular cones")
    singular = [fan.resolve(label) for label in report.singular_cones]
    rest = [c for c in fan.cones() if c not in singular]
    boundary_faces = [c for c in fan.cones() if any(c < s for s in singular)]
    decomposition = DistantDecomposition(
        smooth_part=fan.subfan(rest),
        singular_part=fan.subfan(singular),
        overlap=fan.subfan(boundary_faces),
    )
    if not is_smooth_fan(decomposition.smooth_part):
        raise InvariantViolation("removing distant singular cones left a singular cone")
    if not decomposition.overlap.is_subfan_of(decomposition.smooth_part):
        raise InvariantViolation("boundaries of the singular cones are not in the smooth part")
    return decomposition


def _require_complete_planar(fan: Fan) -> None:
    if fan.n != 2:
        raise DimensionMismatch(f"expected a fan in R^2, got R^{fan.n}")
    if not is_complete(fan):
        raise Unsupported("expected a complete 2D fan")


def odd_k1_rank(fan: Fan) -> int:
    """Rank of the odd K-group of a complete 2D fan: index of the ray span minus one."""
    _require_complete_planar(fan)
    return spans_ambient(fan.ray_vectors, 2).index - 1


def splitting_surjectivity(fan: Fan, splitting: Optional[Splitting] = None) -> bool:
    """Whether # is onto for the given splitting into two clumps."""
    _require_complete_planar(fan)
    splitting = splitting or complete_2d_splitting(fan)
    check_splitting(fan, splitting)
    total = sum_of_ideals([clump_ideal(splitting.first), clump_ideal(splitting.second)], 2)
    return contains(euler_class((1, 0)), total) and contains(euler_class((0, 1)), total)


def cokernel_rank_window(fan: Fan, radius: int, splitting: Optional[Splitting] = None) -> int:
    """Rank of coker(#) computed on exponents in [-radius, radius]^2.

    The target holds pairs (f, g) of window-supported values on the two
    shared rays of the splitting; such pairs have equal coefficient sums.
    Restricting the constant a^u gives (a^u, a^u), and a clump contributes
    (0, a^u - a^v) whenever u - v lies in the lattice of its clump ideal.
    The image vectors are ranked through their invariant factors.
    """
    _require_complete_planar(fan)
    splitting = splitting or complete_2d_splitting(fan)
    check_splitting(fan, splitting)
    points = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    size = len(points)
    image: List[List[int]] = []
    for i in range(size):
        row = [0] * (2 * size)
        row[i] = row[size + i] = 1
        image.append(row)
    for clump in (splitting.first, splitting.second):
        lattice = clump_ideal(clump).lattice
        anchors: Dict[tuple, int] = {}
        for j, u in enumerate(points):
            key = lattice.coset_representative(u)
            if key not in anchors:
                anchors[key] = j
                continue
            row = [0] * (2 * size)
            row[size + anchors[key]] = 1
            row[size + j] = -1
            image.append(row)
    image_rank = sum(1 for d in invariant_factors(image, len(image), 2 * size) if d)
    rank = 2 * size - 1 - image_rank
    LOGGER.debug("window of radius %d: %d image vectors of rank %d", radius, len(image), image_rank)
    return rank


def fwps_weights(fan: Fan) -> WeightData:
    """Positive coprime weights of the relation among the n + 1 rays of a complete fan.

    Raises:
        NotFwps: The fan is not complete, has the wrong number of rays or no
            positive relation.
    """
    n = fan.n
    if len(fan.ray_vectors) != n + 1:
        raise NotFwps(f"{len(fan.ray_vectors)} rays, a fake weighted projective space has {n + 1}")
    if not is_complete(fan):
        raise NotFwps("the fan is not complete")
    matrix = sympy.Matrix([[v[i] for v in fan.ray_vectors] for i in range(n)])
    kernel = matrix.nullspace()
    if len(kernel) != 1:
        raise NotFwps("the rays satisfy more than one relation")
    column = [sympy.Rational(x) for x in kernel[0]]
    scale = fold(lcm, (int(x.q) for x in column), 1)
    weights = [int(x * scale) for x in column]
    if all(w <= 0 for w in weights):
        weights = [-w for w in weights]
    if any(w <= 0 for w in weights):
        raise NotFwps("the rays have no positive relation")
    g = fold(gcd, weights)
    weights = [w // g for w in weights]
    return WeightData(tuple(weights), spans_ambient(fan.ray_vectors, n).spans)


def classify(fan: Fan) -> Verdict:
    """Run the decision tree; the first rule that applies decides.

    Rules in order: smooth fan, distant singular cones, 2D incomplete,
    2D complete by span index. Otherwise Unknown.
    """
    smooth = is_smooth_fan(fan)
    report = singularity_report(fan)
    planar = fan.n == 2
    complete = is_complete(fan)
    holds: List[str] = []
    certificate: Dict[str, object] = {
        "smooth": smooth,
        "singular_cones": list(report.singular_cones),
    }
    if smooth:
        holds.append(SMOOTH)
    if report.has_distant_singular_cones:
        holds.append(DISTANT)
        decomposition = distant_decomposition(fan, report)
        certificate["decomposition"] = {
            "smooth_part": list(decomposition.smooth_part.cone_names),
            "singular_part": list(decomposition.singular_part.cone_names),
            "overlap": list(decomposition.overlap.cone_names),
        }
    if planar and not complete:
        holds.append(PLANAR_INCOMPLETE)
    odd_rank = None
    if planar and complete:
        index = spans_ambient(fan.ray_vectors, 2).index
        odd_rank = index - 1
        certificate["span_index"] = index
        holds.append(PLANAR_SPANNING if index == 1 else PLANAR_NOT_SPANNING)

    if holds:
        theorem = holds[0]
        outcome = Outcome.NOT_ISOMORPHIC if theorem == PLANAR_NOT_SPANNING else Outcome.ISOMORPHIC
        explanation = ""
    else:
        theorem = "none"
        outcome = Outcome.UNKNOWN
        failed = ["the fan is singular"]
        if report.entries and not report.has_distant_singular_cones:
            kind = "isolated but not distant" if report.has_isolated_singular_cones else "not distant"
            failed.append(f"its singular cones are {kind}")
        if not planar:
            failed.append(f"the fan lives in R^{fan.n}, not R^2")
        explanation = "; ".join(failed)
    LOGGER.debug("classify: hypotheses %s, verdict %s", holds, outcome.value)
    return Verdict(
        outcome=outcome,
        theorem=theorem,
        justification=tuple(holds),
        certificate=certificate,
        odd_rank=odd_rank,
        explanation=explanation,
    )
