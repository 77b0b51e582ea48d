"""
Mod-2 Steenrod algebra arithmetic
Admissible (Adem) basis for storage, Milnor basis for products, profiles and pairings.
"""

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from resolve.linalg import Solver
from .exceptions import AlgebraMismatchError, NotInSubalgebraError

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
MilnorTuple = Tuple[int, ...]

TAGS = ('A', 'A0', 'A1', 'A2', 'A3')
TAG_ALIASES = {
    'A(0)': 'A0', 'A(1)': 'A1', 'A(2)': 'A2', 'A(3)': 'A3',
    'A_0': 'A0', 'A_1': 'A1', 'A_2': 'A2', 'A_3': 'A3',
}


def normalize_tag(tag: str) -> str:
    tag = TAG_ALIASES.get(tag.strip(), tag.strip())
    if tag not in TAGS:
        raise AlgebraMismatchError(f"Unknown algebra tag '{tag}'")
    return tag


def profile(tag: str) -> Optional[Tuple[int, ...]]:
    """Exclusive bounds on r_j for Sq(r_1, r_2, ...) in A(n); None for the full algebra"""
    tag = normalize_tag(tag)
    if tag == 'A':
        return None
    n = int(tag[1:])
    return tuple(2 ** (n + 2 - j) for j in range(1, n + 2))


def top_degree(tag: str) -> Optional[int]:
    bounds = profile(tag)
    if bounds is None:
        return None
    return sum((b - 1) * (2 ** j - 1) for j, b in enumerate(bounds, start=1))


def generator_degrees(tag: str, max_degree: Optional[int] = None) -> List[int]:
    """Degrees 2^k of the algebra generators Sq^{2^k}"""
    tag = normalize_tag(tag)
    if tag == 'A':
        if max_degree is None:
            raise ValueError('The full algebra needs a degree bound')
        degrees, d = [], 1
        while d <= max(max_degree, 1):
            degrees.append(d)
            d *= 2
        return degrees
    return [2 ** k for k in range(int(tag[1:]) + 1)]


def binomial_mod2(n: int, k: int) -> int:
    """binom(n, k) mod 2 by Lucas; negative n via binom(-m, k) = +-binom(m+k-1, k)"""
    if k < 0:
        return 0
    if n < 0:
        n = k - n - 1
    return 1 if (k & ~n) == 0 else 0


def milnor_degree(r: MilnorTuple) -> int:
    return sum(x * (2 ** j - 1) for j, x in enumerate(r, start=1))


def strip(r: Iterable[int]) -> Tuple[int, ...]:
    r = list(r)
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def in_profile(r: MilnorTuple, tag: str) -> bool:
    bounds = profile(tag)
    if bounds is None:
        return True
    if len(r) > len(bounds):
        return False
    return all(x < b for x, b in zip(r, bounds))


def is_admissible(word: Word) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


def excess(word: Word) -> int:
    return sum(word[j] - 2 * word[j + 1] for j in range(len(word) - 1)) + (word[-1] if word else 0)


def _toggle(acc: set, items: Iterable) -> None:
    for item in items:
        if item in acc:
            acc.remove(item)
        else:
            acc.add(item)


# ---------- Adem basis

@lru_cache(maxsize=None)
def _adem(word: Word) -> FrozenSet[Word]:
    word = tuple(i for i in word if i)
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            result: set = set()
            for c in range(a // 2 + 1):
                if binomial_mod2(b - c - 1, a - 2 * c):
                    _toggle(result, _adem(word[:j] + (a + b - c, c) + word[j + 2:]))
            return frozenset(result)
    return frozenset([word])


def adem_terms(word: Iterable[int]) -> FrozenSet[Word]:
    return _adem(tuple(int(i) for i in word))


@lru_cache(maxsize=None)
def _admissible(degree: int, cap: int) -> Tuple[Word, ...]:
    if degree == 0:
        return ((),)
    found = []
    for first in range(min(degree, cap), 0, -1):
        for rest in _admissible(degree - first, first // 2):
            found.append((first,) + rest)
    return tuple(found)


def admissible_monomials(degree: int) -> List[Word]:
    """Admissible sequences of the given degree, sorted lexicographically"""
    if degree < 0:
        return []
    return sorted(_admissible(degree, degree))


# ---------- Milnor basis

@lru_cache(maxsize=None)
def _milnor_tuples(degree: int, length: int) -> Tuple[MilnorTuple, ...]:
    if length == 0:
        return ((),) if degree == 0 else ()
    weight = 2 ** length - 1
    found = []
    for top in range(degree // weight + 1):
        for rest in _milnor_tuples(degree - top * weight, length - 1):
            found.append(rest + (top,))
    return tuple(found)


def milnor_tuples(degree: int, tag: str = 'A') -> List[MilnorTuple]:
    """Milnor basis Sq(R) of the given degree inside the tagged algebra, sorted lexicographically"""
    if degree < 0:
        return []
    length = max(1, (degree + 1).bit_length())
    candidates = {strip(r) for r in _milnor_tuples(degree, length)}
    return sorted(r for r in candidates if in_profile(r, tag))


@lru_cache(maxsize=None)
def milnor_product(r: MilnorTuple, s: MilnorTuple) -> FrozenSet[MilnorTuple]:
    """Sq(r) * Sq(s) via Milnor matrices; coefficients are multinomials mod 2"""
    r, s = strip(r), strip(s)
    if not r:
        return frozenset([s])
    if not s:
        return frozenset([r])
    rows, cols = len(r), len(s)
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
    result: set = set()
    matrix: Dict[Tuple[int, int], int] = {}

    def finish(row_left: List[int], col_left: List[int]) -> None:
        t = []
        for n in range(1, rows + cols + 1):
            acc = 0
            entries = []
            if n <= rows:
                entries.append(row_left[n - 1])
            if n <= cols:
                entries.append(col_left[n - 1])
            for i in range(1, n):
                if i <= rows and n - i <= cols:
                    entries.append(matrix[(i, n - i)])
            for e in entries:
                if acc & e:
                    return
                acc |= e
            t.append(acc)
        _toggle(result, [strip(t)])

    def search(k: int, row_left: List[int], col_left: List[int]) -> None:
        if k == len(cells):
            finish(row_left, col_left)
            return
        i, j = cells[k]
        limit = min(row_left[i - 1] >> j, col_left[j - 1])
        for x in range(limit + 1):
            matrix[(i, j)] = x
            row_left[i - 1] -= x << j
            col_left[j - 1] -= x
            search(k + 1, row_left, col_left)
            row_left[i - 1] += x << j
            col_left[j - 1] += x
        matrix.pop((i, j), None)

    search(0, list(r), list(s))
    return frozenset(result)


@lru_cache(maxsize=None)
def admissible_to_milnor(word: Word) -> FrozenSet[MilnorTuple]:
    if not word:
        return frozenset([()])
    current: FrozenSet[MilnorTuple] = frozenset([(word[0],)])
    for i in word[1:]:
        nxt: set = set()
        for r in current:
            _toggle(nxt, milnor_product(r, (i,)))
        current = frozenset(nxt)
    return current


_conversion_lock = threading.Lock()
_milnor_to_admissible: Dict[int, Dict[MilnorTuple, FrozenSet[Word]]] = {}


def _conversion_table(degree: int) -> Dict[MilnorTuple, FrozenSet[Word]]:
    with _conversion_lock:
        table = _milnor_to_admissible.get(degree)
        if table is not None:
            return table
        admissible = admissible_monomials(degree)
        milnor = milnor_tuples(degree)
        index = {r: i for i, r in enumerate(milnor)}
        change = np.zeros((len(admissible), len(milnor)), dtype=np.uint8)
        for row, word in enumerate(admissible):
            for r in admissible_to_milnor(word):
                change[row, index[r]] = 1
        solver = Solver(change)
        table = {}
        for r in milnor:
            target = np.zeros(len(milnor), dtype=np.uint8)
            target[index[r]] = 1
            combination = solver.solve(target)
            table[r] = frozenset(admissible[i] for i in np.flatnonzero(combination))
        _milnor_to_admissible[degree] = table
        logger.debug('Built Milnor/admissible change of basis in degree %d', degree)
        return table


def milnor_to_admissible(r: MilnorTuple) -> FrozenSet[Word]:
    r = strip(r)
    return _conversion_table(milnor_degree(r))[r]


# ---------- Conjugation

@lru_cache(maxsize=None)
def _chi_sq(n: int) -> FrozenSet[Word]:
    if n == 0:
        return frozenset([()])
    acc: set = set()
    for i in range(1, n + 1):
        for term in _chi_sq(n - i):
            _toggle(acc, adem_terms((i,) + term))
    return frozenset(acc)


def _multiply_terms(x: Iterable[Word], y: Iterable[Word]) -> FrozenSet[Word]:
    acc: set = set()
    y = list(y)
    for a in x:
        for b in y:
            _toggle(acc, adem_terms(a + b))
    return frozenset(acc)


@lru_cache(maxsize=None)
def conjugate_word(word: Word) -> FrozenSet[Word]:
    """chi(Sq^{a_1} ... Sq^{a_k}) = chi(Sq^{a_k}) ... chi(Sq^{a_1})"""
    return reduce(_multiply_terms, (_chi_sq(a) for a in reversed(word)), frozenset([()]))


# ---------- Elements

def _term_key(word: Tuple[int, ...]) -> Tuple[int, ...]:
    return word


@dataclass(frozen=True)
class AdemMonomial:
    exponents: Word

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def admissible(self) -> bool:
        return is_admissible(self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return '1'
        return 'Sq(' + ','.join(str(i) for i in self.exponents) + ')'


@dataclass(frozen=True)
class SteenrodElement:
    """Homogeneous sum of admissible monomials in a tagged algebra"""
    algebra: str
    terms: FrozenSet[Word]
    degree: int

    @classmethod
    def from_terms(cls, algebra: str, terms: Iterable[Word], degree: Optional[int] = None,
                   check: bool = True) -> 'SteenrodElement':
        algebra = normalize_tag(algebra)
        terms = frozenset(tuple(t) for t in terms)
        degrees = {sum(t) for t in terms}
        if len(degrees) > 1:
            raise ValueError(f'Inhomogeneous element with degrees {sorted(degrees)}')
        if degrees:
            degree = degrees.pop()
        for t in terms:
            if not is_admissible(t):
                raise ValueError(f'Term {t} is not admissible')
        element = cls(algebra=algebra, terms=terms, degree=degree or 0)
        if check and not element.in_algebra():
            raise NotInSubalgebraError(f'{element} does not lie in {algebra}')
        return element

    @classmethod
    def unit(cls, algebra: str) -> 'SteenrodElement':
        return cls(algebra=normalize_tag(algebra), terms=frozenset([()]), degree=0)

    @classmethod
    def zero(cls, algebra: str, degree: int = 0) -> 'SteenrodElement':
        return cls(algebra=normalize_tag(algebra), terms=frozenset(), degree=degree)

    @classmethod
    def sq(cls, algebra: str, *word: int) -> 'SteenrodElement':
        """Composite Sq^{a} Sq^{b} ..., Adem-reduced"""
        return adem_reduce(word, algebra)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Word]:
        return sorted(self.terms, key=_term_key)

    def to_milnor(self) -> 'MilnorElement':
        acc: set = set()
        for t in self.terms:
            _toggle(acc, admissible_to_milnor(t))
        return MilnorElement(algebra=self.algebra, terms=frozenset(acc), degree=self.degree)

    def in_algebra(self, tag: Optional[str] = None) -> bool:
        tag = normalize_tag(tag or self.algebra)
        if tag == 'A':
            return True
        return all(in_profile(r, tag) for r in self.to_milnor().terms)

    def retag(self, algebra: str) -> 'SteenrodElement':
        return SteenrodElement.from_terms(algebra, self.terms, self.degree)

    def __add__(self, other: 'SteenrodElement') -> 'SteenrodElement':
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f'{self.algebra} + {other.algebra}')
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError('Adding elements of different degrees')
        degree = self.degree if self.terms else other.degree
        return SteenrodElement(self.algebra, self.terms ^ other.terms, degree)

    def __mul__(self, other: 'SteenrodElement') -> 'SteenrodElement':
        return multiply(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' + '.join(str(AdemMonomial(t)) for t in self.sorted_terms())


@dataclass(frozen=True)
class MilnorElement:
    """Homogeneous sum of Milnor basis elements Sq(R)"""
    algebra: str
    terms: FrozenSet[MilnorTuple]
    degree: int

    @classmethod
    def from_terms(cls, algebra: str, terms: Iterable[MilnorTuple]) -> 'MilnorElement':
        algebra = normalize_tag(algebra)
        terms = frozenset(strip(t) for t in terms)
        degrees = {milnor_degree(t) for t in terms}
        if len(degrees) > 1:
            raise ValueError(f'Inhomogeneous element with degrees {sorted(degrees)}')
        for t in terms:
            if not in_profile(t, algebra):
                raise NotInSubalgebraError(f'M{t} does not lie in {algebra}')
        return cls(algebra=algebra, terms=terms, degree=degrees.pop() if degrees else 0)

    def is_zero(self) -> bool:
        return not self.terms

    def to_admissible(self) -> SteenrodElement:
        acc: set = set()
        for t in self.terms:
            _toggle(acc, milnor_to_admissible(t))
        return SteenrodElement(algebra=self.algebra, terms=frozenset(acc), degree=self.degree)

    def __add__(self, other: 'MilnorElement') -> 'MilnorElement':
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f'{self.algebra} + {other.algebra}')
        degree = self.degree if self.terms else other.degree
        return MilnorElement(self.algebra, self.terms ^ other.terms, degree)

    def __mul__(self, other: 'MilnorElement') -> 'MilnorElement':
        return milnor_multiply(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' + '.join('M(' + ','.join(str(x) for x in t) + ')' if t else '1'
                          for t in sorted(self.terms))


# ---------- Operations

def adem_reduce(word: Iterable[int], algebra: str = 'A') -> SteenrodElement:
    word = tuple(int(i) for i in word)
    if any(i < 0 for i in word):
        raise ValueError(f'Negative exponent in {word}')
    return SteenrodElement.from_terms(algebra, adem_terms(word), degree=sum(word))


def multiply(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    if x.algebra != y.algebra:
        raise AlgebraMismatchError(f'Cannot multiply {x.algebra} by {y.algebra}')
    return SteenrodElement(x.algebra, _multiply_terms(x.terms, y.terms), x.degree + y.degree)


def milnor_multiply(x: MilnorElement, y: MilnorElement) -> MilnorElement:
    if x.algebra != y.algebra:
        raise AlgebraMismatchError(f'Cannot multiply {x.algebra} by {y.algebra}')
    acc: set = set()
    for r in x.terms:
        for s in y.terms:
            _toggle(acc, milnor_product(r, s))
    return MilnorElement(x.algebra, frozenset(acc), x.degree + y.degree)


def basis_convert(x):
    """Admissible <-> Milnor basis"""
    if isinstance(x, SteenrodElement):
        return x.to_milnor()
    if isinstance(x, MilnorElement):
        return x.to_admissible()
    raise TypeError(f'Cannot convert {type(x).__name__}')


def conjugate(x: SteenrodElement) -> SteenrodElement:
    acc: set = set()
    for t in x.terms:
        _toggle(acc, conjugate_word(t))
    return SteenrodElement(x.algebra, frozenset(acc), x.degree)


def milnor_basis(algebra: str, degree: int) -> List[MilnorTuple]:
    return milnor_tuples(degree, normalize_tag(algebra))


def algebra_basis(algebra: str, degree: int) -> List[SteenrodElement]:
    """Basis of the tagged algebra in one degree, each element in admissible form.

    For A this is the admissible monomials; for A(n) it is the Milnor profile basis
    rewritten admissibly, since single admissible monomials need not lie in A(n).
    """
    algebra = normalize_tag(algebra)
    if algebra == 'A':
        return [SteenrodElement(algebra, frozenset([w]), degree) for w in admissible_monomials(degree)]
    return [MilnorElement(algebra, frozenset([r]), degree).to_admissible()
            for r in milnor_basis(algebra, degree)]


def iter_basis(algebra: str) -> Iterator[Tuple[int, MilnorTuple]]:
    """All (degree, Sq(R)) of a finite A(n)"""
    top = top_degree(algebra)
    if top is None:
        raise ValueError('The full algebra is infinite')
    for d in range(top + 1):
        for r in milnor_basis(algebra, d):
            yield d, r
