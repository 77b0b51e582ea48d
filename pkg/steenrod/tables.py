"""
Indexed Milnor basis of a tagged algebra with multiplication tables and generator
decompositions. These are the memo tables shared by module actions and resolutions.
"""

import logging
import threading
from typing import Dict, List, Optional, Tuple

import numpy as np
from django.core.cache import cache

from resolve.linalg import Solver
from .algebra import (
    generator_degrees, milnor_basis, milnor_product, normalize_tag, top_degree,
)

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


class AlgebraTables:
    """Milnor basis indexed by (degree, R), products by index, and Sq^{2^k} decompositions"""

    def __init__(self, tag: str, max_degree: Optional[int] = None):
        self.tag = normalize_tag(tag)
        top = top_degree(self.tag)
        if top is None and max_degree is None:
            raise ValueError('The full algebra needs a degree bound')
        self.max_degree = top if max_degree is None or (top is not None and max_degree > top) else max_degree
        self.basis: List[Tuple[int, ...]] = []
        self.degrees: List[int] = []
        self.by_degree: Dict[int, List[int]] = {}
        for d in range(self.max_degree + 1):
            indices = []
            for r in milnor_basis(self.tag, d):
                indices.append(len(self.basis))
                self.basis.append(r)
                self.degrees.append(d)
            self.by_degree[d] = indices
        self.index = {r: i for i, r in enumerate(self.basis)}
        self.unit = self.index[()]
        self.generators = [(k, self.index[(d,)]) for k, d in
                           enumerate(generator_degrees(self.tag, self.max_degree))
                           if d <= self.max_degree and (d,) in self.index]
        self._products: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        self._decompositions: Dict[int, Tuple[Tuple[int, int], ...]] = {}
        self._lock = threading.Lock()
        self._load()

    @property
    def cache_key(self) -> str:
        return f'ext2:tables:v{CACHE_VERSION}:{self.tag}:{self.max_degree}'

    def _load(self) -> None:
        stored = cache.get(self.cache_key)
        if stored:
            self._products, self._decompositions = stored
            logger.debug('Loaded %s tables through degree %d from cache', self.tag, self.max_degree)

    def save(self) -> None:
        with self._lock:
            cache.set(self.cache_key, (dict(self._products), dict(self._decompositions)), None)

    def __len__(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def dim(self, d: int) -> int:
        return len(self.by_degree.get(d, ()))

    def sq(self, n: int) -> int:
        return self.index[(n,)]

    def product(self, i: int, j: int) -> Tuple[int, ...]:
        key = (i, j)
        found = self._products.get(key)
        if found is not None:
            return found
        if self.degrees[i] + self.degrees[j] > self.max_degree:
            if top_degree(self.tag) is not None:
                return ()
            raise ValueError(f'Product degree exceeds the {self.tag} table bound {self.max_degree}')
        terms = milnor_product(self.basis[i], self.basis[j])
        found = tuple(sorted(self.index[t] for t in terms if t in self.index))
        with self._lock:
            self._products[key] = found
        return found

    def product_vector(self, i: int, j: int) -> np.ndarray:
        d = self.degrees[i] + self.degrees[j]
        vector = np.zeros(self.dim(d), dtype=np.uint8)
        offset = self.by_degree[d][0] if self.by_degree[d] else 0
        for k in self.product(i, j):
            vector[k - offset] = 1
        return vector

    def decomposition(self, i: int) -> Tuple[Tuple[int, int], ...]:
        """Pairs (k, j) with Sq(R_i) = sum Sq^{2^k} * Sq(R_j)"""
        found = self._decompositions.get(i)
        if found is not None:
            return found
        d = self.degrees[i]
        if d == 0:
            return ()
        candidates = [(k, j) for k, g in self.generators
                      for j in self.by_degree.get(d - self.degrees[g], [])]
        rows = np.array([self.product_vector(self.generators[k][1], j) for k, j in candidates],
                        dtype=np.uint8).reshape(len(candidates), self.dim(d))
        solver = Solver(rows)
        offset = self.by_degree[d][0]
        decompositions = {}
        for target in self.by_degree[d]:
            vector = np.zeros(self.dim(d), dtype=np.uint8)
            vector[target - offset] = 1
            combination = solver.solve(vector)
            if combination is None:
                raise ValueError(f'Sq{self.basis[target]} is not generated by Sq^(2^k)')
            decompositions[target] = tuple(candidates[c] for c in np.flatnonzero(combination))
        with self._lock:
            self._decompositions.update(decompositions)
        return decompositions[i]


_tables: Dict[Tuple[str, Optional[int]], AlgebraTables] = {}
_tables_lock = threading.Lock()


def get_tables(tag: str, max_degree: Optional[int] = None) -> AlgebraTables:
    """Shared tables; finite algebras ignore the degree bound beyond their top degree"""
    tag = normalize_tag(tag)
    top = top_degree(tag)
    if top is not None:
        max_degree = top
    key = (tag, max_degree)
    with _tables_lock:
        tables = _tables.get(key)
        if tables is None:
            tables = AlgebraTables(tag, max_degree)
            _tables[key] = tables
        return tables


def warm(tables: AlgebraTables) -> AlgebraTables:
    """Fill every product and decomposition so parallel phases only read"""
    for i in range(len(tables)):
        for j in range(len(tables)):
            if tables.degrees[i] + tables.degrees[j] <= tables.max_degree:
                tables.product(i, j)
        tables.decomposition(i)
    tables.save()
    return tables


def milnor_element_indices(tables: AlgebraTables, element) -> List[int]:
    """Indices of the Milnor terms of a SteenrodElement or MilnorElement"""
    milnor = element.to_milnor() if hasattr(element, 'to_milnor') else element
    return sorted(tables.index[r] for r in milnor.terms)
