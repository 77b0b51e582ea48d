"""
Finitely presented modules over a finite A(n): free generators modulo a submodule
generated by relations, computed degreewise by row reduction over the Milnor basis.
"""

import logging
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from resolve.linalg import EchelonBasis, to_gf2
from steenrod.algebra import MilnorElement, SteenrodElement, normalize_tag, top_degree
from steenrod.exceptions import NotationError
from steenrod.notation import parse_element
from steenrod.tables import get_tables
from .exceptions import ModuleDefinitionError
from .modules import Blocks, FiniteModule, ModuleMap

logger = logging.getLogger(__name__)

Coefficient = Union[SteenrodElement, MilnorElement]
FreeElement = List[Tuple[Coefficient, str]]


def _milnor_label(r) -> str:
    return 'M(' + ','.join(str(x) for x in r) + ')' if r else ''


def _split_top_level(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == '+' and depth == 0:
            parts.append(''.join(current))
            current = []
        else:
            current.append(ch)
    parts.append(''.join(current))
    return parts


def parse_free_element(text: str, generator_names: Iterable[str], algebra: str = 'A') -> FreeElement:
    """Parse 'Sq7 I4 + (Sq6Sq6+Sq7Sq5) I11 + I16' into (coefficient, generator) pairs"""
    names = set(generator_names)
    text = text.strip()
    if text == '0':
        return []
    terms: FreeElement = []
    for part in _split_top_level(text):
        part = part.strip()
        match = re.match(r'^(.*?)\s*([A-Za-z_][\w\-]*)$', part)
        if not match or match.group(2) not in names:
            raise NotationError(f"No generator at the end of '{part}'")
        coefficient = match.group(1).strip()
        if coefficient.startswith('(') and coefficient.endswith(')'):
            coefficient = coefficient[1:-1]
        terms.append((parse_element(coefficient or '1', algebra), match.group(2)))
    return terms


def format_free_element(element: FreeElement) -> str:
    parts = []
    for coefficient, generator in element:
        text = str(coefficient)
        if text == '1':
            parts.append(generator)
        elif ' + ' in text:
            parts.append(f'({text}) {generator}')
        else:
            parts.append(f'{text} {generator}')
    return ' + '.join(parts) or '0'


class PresentedModule(FiniteModule):
    """Quotient of the free module on `generators` by the submodule generated by `relations`.

    Basis elements are the Milnor monomials Sq(R) g at non-pivot positions of the relation
    space, named 'M(R)g' (just 'g' for the generator itself).
    """

    def __init__(self, algebra: str, generators: Sequence[Tuple[str, int]],
                 relations: Sequence[FreeElement] = (), name: str = ''):
        tag = normalize_tag(algebra)
        if top_degree(tag) is None:
            raise ModuleDefinitionError('Presentations need a finite algebra A(n)')
        tables = get_tables(tag)
        self.cover_generators = [(str(n), int(d)) for n, d in generators]
        self.generator_index = {n: a for a, (n, _) in enumerate(self.cover_generators)}
        if len(self.generator_index) != len(self.cover_generators):
            raise ModuleDefinitionError('Duplicate generator names')
        self.relations = [list(r) for r in relations]
        self._free: Dict[int, List[Tuple[int, int]]] = {}
        self._free_index: Dict[int, Dict[Tuple[int, int], int]] = {}
        if self.cover_generators:
            low = min(d for _, d in self.cover_generators)
            high = max(d for _, d in self.cover_generators) + tables.max_degree
            for degree in range(low, high + 1):
                coords = [(a, j) for a, (_, dg) in enumerate(self.cover_generators)
                          for j in tables.by_degree.get(degree - dg, [])]
                if coords:
                    self._free[degree] = coords
                    self._free_index[degree] = {c: i for i, c in enumerate(coords)}

        spaces = {d: EchelonBasis(len(coords)) for d, coords in self._free.items()}
        for relation in self.relations:
            terms, degree = self._relation_terms(relation, tables)
            if degree is None:
                continue
            for b in range(len(tables)):
                target = degree + tables.degrees[b]
                if target not in spaces:
                    continue
                vector = np.zeros(len(self._free[target]), dtype=np.uint8)
                for a, i in terms:
                    for c in tables.product(b, i):
                        vector[self._free_index[target][(a, c)]] ^= 1
                spaces[target].add(vector)

        self._pivots: Dict[int, List[int]] = {}
        self._kept: Dict[int, List[int]] = {}
        self._projection: Dict[int, np.ndarray] = {}
        basis = []
        for d, coords in self._free.items():
            space = spaces[d]
            order = np.argsort(space.pivots) if len(space) else []
            pivots = [space.pivots[i] for i in order]
            rows = space.dense()[order] if len(space) else np.zeros((0, len(coords)), dtype=np.uint8)
            pivot_set = set(pivots)
            kept = [c for c in range(len(coords)) if c not in pivot_set]
            projection = np.zeros((len(kept), len(coords)), dtype=np.uint8)
            for q, c in enumerate(kept):
                projection[q, c] = 1
            for p, row in zip(pivots, rows):
                projection[:, p] = row[kept]
            self._pivots[d], self._kept[d], self._projection[d] = pivots, kept, projection
            for c in kept:
                a, j = coords[c]
                basis.append((_milnor_label(tables.basis[j]) + self.cover_generators[a][0], d))

        actions: Blocks = {}
        for k, gi in tables.generators:
            g = 2 ** k
            for d, kept in self._kept.items():
                if not kept or not self._kept.get(d + g):
                    continue
                free_images = np.zeros((len(self._free[d + g]), len(kept)), dtype=np.uint8)
                for col, c in enumerate(kept):
                    a, j = self._free[d][c]
                    for t in tables.product(gi, j):
                        free_images[self._free_index[d + g][(a, t)], col] ^= 1
                actions.setdefault(g, {})[d] = (self._projection[d + g].astype(np.int32)
                                                @ free_images.astype(np.int32) & 1).astype(np.uint8)
        super().__init__(tag, basis, actions, name=name)
        logger.debug('Presented %s: %d generators, %d relations, dimension %d',
                     name or 'module', len(self.cover_generators), len(self.relations), len(self))

    def _relation_terms(self, relation: FreeElement, tables) -> Tuple[List[Tuple[int, int]], Optional[int]]:
        terms, degrees = [], set()
        for coefficient, generator in relation:
            if generator not in self.generator_index:
                raise ModuleDefinitionError(f"Relation uses unknown generator '{generator}'")
            a = self.generator_index[generator]
            milnor = coefficient.to_milnor() if isinstance(coefficient, SteenrodElement) else coefficient
            for r in milnor.terms:
                if r not in tables.index:
                    raise ModuleDefinitionError(f'{coefficient} does not lie in {tables.tag}')
                terms.append((a, tables.index[r]))
            if milnor.terms:
                degrees.add(milnor.degree + self.cover_generators[a][1])
        if len(degrees) > 1:
            raise ModuleDefinitionError(f'Inhomogeneous relation {format_free_element(relation)}')
        deduped: Dict[Tuple[int, int], int] = {}
        for t in terms:
            deduped[t] = deduped.get(t, 0) ^ 1
        return [t for t, bit in deduped.items() if bit], (degrees.pop() if degrees else None)

    def free_dim(self, d: int) -> int:
        return len(self._free.get(d, ()))

    def project(self, d: int, free_vector) -> np.ndarray:
        """Full module vector of a free-module vector in degree d"""
        result = np.zeros(len(self), dtype=np.uint8)
        if d in self._projection and self._kept[d]:
            free_vector = to_gf2(free_vector).reshape(-1)
            result[self.positions(d)] = (self._projection[d].astype(np.int32)
                                         @ free_vector.astype(np.int32)) & 1
        return result

    def element(self, value: Union[str, FreeElement]) -> np.ndarray:
        """Module vector of 'Sq7 I4 + ...' or of parsed (coefficient, generator) pairs"""
        if isinstance(value, str):
            value = parse_free_element(value, self.generator_index, self.algebra)
        tables = self.tables
        terms, degree = self._relation_terms(value, tables)
        if degree is None or degree not in self._free:
            return np.zeros(len(self), dtype=np.uint8)
        free_vector = np.zeros(len(self._free[degree]), dtype=np.uint8)
        for a, i in terms:
            free_vector[self._free_index[degree][(a, i)]] ^= 1
        return self.project(degree, free_vector)

    def generator_vector(self, name: str) -> np.ndarray:
        if name not in self.generator_index:
            raise ModuleDefinitionError(f"Unknown generator '{name}'")
        return self.element([(SteenrodElement.unit(self.algebra), name)])

    def basis_word(self, index: int) -> Tuple[int, str]:
        """(Milnor table index, generator name) of a basis element"""
        d = self.degrees[index]
        c = self._kept[d][index - self.offsets[d]]
        a, j = self._free[d][c]
        return j, self.cover_generators[a][0]


def present(algebra: str, generators: Sequence[Tuple[str, int]],
            relations: Sequence[Union[str, FreeElement]] = (), name: str = '') -> PresentedModule:
    names = [n for n, _ in generators]
    parsed = [parse_free_element(r, names, algebra) if isinstance(r, str) else r for r in relations]
    return PresentedModule(algebra, generators, parsed, name=name)


def free_module(algebra: str, generators: Sequence[Tuple[str, int]], name: str = '') -> PresentedModule:
    return PresentedModule(algebra, generators, [], name=name)


def free_cover(m: PresentedModule) -> PresentedModule:
    """The free module on the cover generators of a presented module"""
    return free_module(m.algebra, m.cover_generators, name=f'F({m.name})')


def quotient_by_left_ideal(algebra: str, relations: Sequence[Union[str, SteenrodElement]],
                           name: str = '', generator: str = 'i', degree: int = 0) -> PresentedModule:
    """A(n)/A(n)(relations), cyclic on a generator in degree 0"""
    tag = normalize_tag(algebra)
    elements = [parse_element(r, tag) if isinstance(r, str) else r for r in relations]
    return PresentedModule(tag, [(generator, degree)], [[(e, generator)] for e in elements], name=name)


def map_from_generators(source: PresentedModule, target: FiniteModule, images: Dict[str, np.ndarray],
                        shift: int = 0, name: str = '') -> ModuleMap:
    """The homomorphism sending each cover generator to the given target vector.

    Raises ModuleDefinitionError when an image has the wrong degree or a relation of
    the source is not sent to zero.
    """
    for generator, degree in source.cover_generators:
        vector = images.get(generator)
        if vector is None:
            continue
        found = target.degree_of(vector)
        if found is not None and found != degree + shift:
            raise ModuleDefinitionError(
                f'Image of {generator} has degree {found}, expected {degree + shift}')
    for relation in source.relations:
        total = np.zeros(len(target), dtype=np.uint8)
        for coefficient, generator in relation:
            if generator in images:
                total ^= target.act(coefficient, images[generator])
        if total.any():
            raise ModuleDefinitionError(
                f'Relation {format_free_element(relation)} is not sent to zero')
    matrix = np.zeros((len(target), len(source)), dtype=np.uint8)
    same_tables = target.tables is source.tables
    for index in range(len(source)):
        j, generator = source.basis_word(index)
        vector = images.get(generator)
        if vector is None:
            continue
        if same_tables:
            column = (target.milnor_matrix(j).astype(np.int32) @ to_gf2(vector).astype(np.int32)) & 1
        else:
            r = source.tables.basis[j]
            column = target.act(MilnorElement(source.algebra, frozenset([r]), source.tables.degrees[j]),
                                vector)
        matrix[:, index] = column
    return ModuleMap(source, target, matrix, shift, name)
