"""
Dual Steenrod algebra in the conjugate generators zeta_i = chi(xi_i)

psi(zeta_n) = sum_{i=0}^{n} zeta_i (x) zeta_{n-i}^{2^i}, and theta pairs with zeta^E through the
coefficient of Sq(E) in the Milnor expansion of chi(theta). The left action used for
homology modules is m -> m <- chi(theta), which reads Sq(E') off theta directly.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .algebra import SteenrodElement, conjugate, strip

Exponents = Tuple[int, ...]
DualPolynomial = FrozenSet[Exponents]


@dataclass(frozen=True)
class DualMonomial:
    exponents: Exponents

    def __post_init__(self):
        object.__setattr__(self, 'exponents', strip(self.exponents))

    @property
    def degree(self) -> int:
        return dual_degree(self.exponents)

    @property
    def weight(self) -> int:
        return dual_weight(self.exponents)

    def __mul__(self, other: 'DualMonomial') -> 'DualMonomial':
        return DualMonomial(_add(self.exponents, other.exponents))

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f'z{i}')
            elif e:
                parts.append(f'z{i}^{e}')
        return ''.join(parts) or '1'


def dual_degree(e: Exponents) -> int:
    return sum(x * (2 ** j - 1) for j, x in enumerate(e, start=1))


def dual_weight(e: Exponents) -> int:
    return sum(x * 2 ** (j - 1) for j, x in enumerate(e, start=1))


def _add(a: Exponents, b: Exponents) -> Exponents:
    n = max(len(a), len(b))
    return strip((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _zeta_power(i: int, power: int) -> Exponents:
    if i == 0 or power == 0:
        return ()
    return strip(tuple(power if j == i else 0 for j in range(1, i + 1)))


@lru_cache(maxsize=None)
def coproduct(e: Exponents, left_degree: int) -> FrozenSet[Tuple[Exponents, Exponents]]:
    """Terms x' (x) x'' of psi(zeta^E) whose left factor has the given degree"""
    e = strip(e)
    factors: List[List[Tuple[Exponents, Exponents]]] = []
    for n, exponent in enumerate(e, start=1):
        k = 0
        while exponent >> k:
            if (exponent >> k) & 1:
                factors.append([(_zeta_power(i, 2 ** k), _zeta_power(n - i, 2 ** (i + k)))
                                for i in range(n + 1)])
            k += 1
    partial: Dict[Tuple[Exponents, Exponents], int] = {((), ()): 1}
    for factor in factors:
        nxt: Dict[Tuple[Exponents, Exponents], int] = {}
        for (left, right), _ in partial.items():
            for a, b in factor:
                new_left = _add(left, a)
                if dual_degree(new_left) > left_degree:
                    continue
                key = (new_left, _add(right, b))
                nxt[key] = nxt.get(key, 0) ^ 1
        partial = {key: 1 for key, bit in nxt.items() if bit}
    return frozenset(key for key in partial if dual_degree(key[0]) == left_degree)


def pairing(theta: SteenrodElement, e: Exponents) -> int:
    """<theta, zeta^E> = coefficient of Sq(E) in chi(theta)"""
    return 1 if strip(e) in conjugate(theta).to_milnor().terms else 0


def dual_action(theta: SteenrodElement, m: Iterable[Exponents]) -> DualPolynomial:
    """theta . m for m a sum of zeta monomials; lowers degree by deg theta"""
    milnor_terms = theta.to_milnor().terms
    result: set = set()
    for e in m:
        for left, right in coproduct(strip(e), theta.degree):
            if left in milnor_terms:
                if right in result:
                    result.remove(right)
                else:
                    result.add(right)
    return frozenset(result)


def monomials(max_degree: int, generator_count: int = None) -> List[Exponents]:
    """All zeta monomials of degree <= max_degree, sorted by (degree, exponents)"""
    if generator_count is None:
        generator_count = max(1, (max_degree + 1).bit_length())
    found: List[Exponents] = []

    def extend(prefix: List[int], degree: int) -> None:
        j = len(prefix) + 1
        if j > generator_count:
            found.append(strip(prefix))
            return
        step = 2 ** j - 1
        x = 0
        while degree + x * step <= max_degree:
            extend(prefix + [x], degree + x * step)
            x += 1

    extend([], 0)
    return sorted(set(found), key=lambda e: (dual_degree(e), e))
