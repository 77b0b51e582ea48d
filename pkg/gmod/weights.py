"""
Weight filtration of the dual Steenrod algebra

wt(zeta_i) = 2^{i-1}. M_n is the span of the weight-8n monomials of (A//A(2))_* =
F_2[zeta_1^8, zeta_2^4, zeta_3^2, zeta_4, ...]; H_*(bo_n) is the span of the monomials of
weight <= 4n in H_*(bo) = F_2[zeta_1^4, zeta_2^2, zeta_3, ...]. phi_n maps
sigma^{8n} zeta_1^{i_1} zeta_2^{i_2} ... to zeta_1^{8n - sum 2^j i_j} zeta_2^{i_1} zeta_3^{i_2} ...
"""

import logging
from typing import Dict, Iterable, List, Tuple

from steenrod.algebra import adem_reduce, normalize_tag, strip
from steenrod.dual import DualMonomial, dual_action, dual_degree, dual_weight, monomials
from .exceptions import ModuleDefinitionError
from .modules import FiniteModule, dualize, sq_degrees

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]

# exponent of zeta_j must be divisible by these in the sub-Hopf-algebra duals
TMF_DIVISORS = (8, 4, 2)
BO_DIVISORS = (4, 2)


def _divisible(e: Exponents, divisors: Tuple[int, ...]) -> bool:
    return all(x % divisors[j] == 0 for j, x in enumerate(e) if j < len(divisors))


def tmf_weight_monomials(n: int, max_degree: int) -> List[Exponents]:
    """Basis of M_n through max_degree"""
    return [e for e in monomials(max_degree)
            if _divisible(e, TMF_DIVISORS) and dual_weight(e) == 8 * n]


def bo_monomials(n: int, max_degree: int) -> List[Exponents]:
    """Basis of H_*(bo_n) through max_degree"""
    return [e for e in monomials(max_degree)
            if _divisible(e, BO_DIVISORS) and dual_weight(e) <= 4 * n]


def poincare_series(degrees: Iterable[int], max_degree: int) -> Dict[int, int]:
    series = {d: 0 for d in range(max_degree + 1)}
    for d in degrees:
        if 0 <= d <= max_degree:
            series[d] += 1
    return series


def weight_decomposition(n: int, max_degree: int) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Poincare series of M_n and of H_*(Sigma^{8n} bo_n) through max_degree"""
    if n < 0:
        raise ValueError('n must be nonnegative')
    series_m = poincare_series((dual_degree(e) for e in tmf_weight_monomials(n, max_degree)), max_degree)
    shifted = max_degree - 8 * n
    bo = bo_monomials(n, shifted) if shifted >= 0 else []
    series_bo = poincare_series((dual_degree(e) + 8 * n for e in bo), max_degree)
    return series_m, series_bo


def phi(n: int, e: Exponents) -> Exponents:
    """phi_n on the bo_n monomial zeta^E"""
    e = strip(e)
    first = 8 * n - sum(2 ** j * x for j, x in enumerate(e, start=1))
    if first < 0:
        raise ValueError(f'Weight of {DualMonomial(e)} exceeds {4 * n}')
    return strip((first,) + e)


def phi_report(n: int, max_degree: int) -> dict:
    """phi_n is degree preserving and carries the bo_n basis bijectively onto the M_n basis"""
    shifted = max_degree - 8 * n
    source = bo_monomials(n, shifted) if shifted >= 0 else []
    images = [phi(n, e) for e in source]
    target = set(tmf_weight_monomials(n, max_degree))
    degree_preserving = all(dual_degree(img) == dual_degree(e) + 8 * n for e, img in zip(source, images))
    return {
        'valid': degree_preserving and len(set(images)) == len(images) and set(images) == target,
        'degree_preserving': degree_preserving,
        'injective': len(set(images)) == len(images),
        'onto': set(images) == target,
        'size': len(source),
    }


def homology_module(basis: Iterable[Exponents], algebra: str = 'A', name: str = '') -> FiniteModule:
    """Span of zeta monomials with the left action, placed in negative degrees so operations raise degree"""
    tag = normalize_tag(algebra)
    basis = sorted({strip(e) for e in basis}, key=lambda e: (-dual_degree(e), e))
    present = set(basis)
    labels = {e: str(DualMonomial(e)) for e in basis}
    degrees = [dual_degree(e) for e in basis]
    span = (max(degrees) - min(degrees)) if degrees else 0
    arrows = []
    for g in sq_degrees(tag, span):
        sq = adem_reduce([g], 'A')
        for e in basis:
            image = dual_action(sq, [e])
            missing = [m for m in image if m not in present]
            if missing:
                raise ModuleDefinitionError(
                    f'Sq{g} {labels[e]} leaves the span: {DualMonomial(missing[0])}')
            if image:
                arrows.append((g, labels[e], sorted(labels[m] for m in image)))
    return FiniteModule.from_arrows(tag, [(labels[e], -dual_degree(e)) for e in basis], arrows, name=name)


def bo_homology(n: int, algebra: str = 'A') -> FiniteModule:
    top = 8 * n
    return homology_module(bo_monomials(n, top), algebra, name=f'H_*(bo{n})')


def bo_cohomology(n: int, algebra: str = 'A') -> FiniteModule:
    """H^*(bo_n) as the dual of the homology span"""
    return dualize(bo_homology(n, algebra), name=f'bo{n}_cohomology')
