"""
Finite graded modules over A(n), or over A through a degree bound

A module stores only the action of the generators Sq^1, Sq^2, ..., Sq^{2^n}, one block
per (generator degree g, source degree d) of shape (dim M_{d+g}, dim M_d). Every other
operation is derived through the generator decompositions of the Milnor basis kept in
steenrod.tables, and validate() checks that the derived action is well defined.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from resolve.linalg import EchelonBasis, Solver, gf2_matmul, kernel as null_space, rank, to_gf2
from steenrod.algebra import (
    MilnorElement, SteenrodElement, adem_reduce, binomial_mod2, conjugate, generator_degrees,
    in_profile, normalize_tag, top_degree,
)
from steenrod.exceptions import AlgebraMismatchError, NotInSubalgebraError
from steenrod.tables import AlgebraTables, get_tables
from .exceptions import ModuleDefinitionError, ModuleValidationError

logger = logging.getLogger(__name__)

Basis = List[Tuple[str, int]]
Blocks = Dict[int, Dict[int, np.ndarray]]
Arrow = Tuple[int, str, Sequence[str]]

# A0 < A1 < A2 < A3 < A
ALGEBRA_RANK = {'A0': 0, 'A1': 1, 'A2': 2, 'A3': 3, 'A': 99}


def sq_degrees(algebra: str, span: int) -> List[int]:
    """Degrees of the generators acting on a module whose degrees span `span`"""
    tag = normalize_tag(algebra)
    if tag == 'A':
        return [g for g in generator_degrees('A', max(span, 1)) if g <= span]
    return generator_degrees(tag)


def dual_name(name: str) -> str:
    return name[:-1] if name.endswith('*') else name + '*'


def _sorted_basis(basis: Iterable[Tuple[str, int]]) -> Tuple[Basis, List[int]]:
    basis = [(str(n), int(d)) for n, d in basis]
    order = sorted(range(len(basis)), key=lambda i: basis[i][1])
    return [basis[i] for i in order], order


class FiniteModule:
    """Graded F_2 vector space with the action of the algebra generators"""

    def __init__(self, algebra: str, basis: Iterable[Tuple[str, int]], actions: Optional[Blocks] = None,
                 name: str = '', truncation: Optional[int] = None):
        self.algebra = normalize_tag(algebra)
        self.name = name
        # the true module agrees with this one through degree `truncation`; None means exact
        self.truncation = truncation
        basis = [(str(n), int(d)) for n, d in basis]
        self.names = [n for n, _ in basis]
        self.degrees = [d for _, d in basis]
        if any(a > b for a, b in zip(self.degrees, self.degrees[1:])):
            raise ModuleDefinitionError('Basis must be listed in ascending degree')
        if len(set(self.names)) != len(self.names):
            raise ModuleDefinitionError(f'Duplicate basis names in {name or "module"}')
        self.index = {n: i for i, n in enumerate(self.names)}
        self.offsets: Dict[int, int] = {}
        self.dims: Dict[int, int] = {}
        for i, d in enumerate(self.degrees):
            self.offsets.setdefault(d, i)
            self.dims[d] = self.dims.get(d, 0) + 1
        self.min_degree = self.degrees[0] if self.degrees else 0
        self.max_degree = self.degrees[-1] if self.degrees else 0
        self.span = self.max_degree - self.min_degree
        self.generators = sq_degrees(self.algebra, self.span)
        self._actions: Blocks = {}
        for g, blocks in (actions or {}).items():
            for d, block in blocks.items():
                block = to_gf2(block)
                expected = (self.dim(d + g), self.dim(d))
                if block.shape != expected:
                    raise ModuleDefinitionError(
                        f'Sq{g} block in degree {d} has shape {block.shape}, expected {expected}')
                if not block.any():
                    continue
                if g not in self.generators:
                    raise ModuleDefinitionError(f'Sq{g} is not a generator of {self.algebra}')
                self._actions.setdefault(g, {})[d] = block
        self._milnor: Dict[Tuple[int, int], np.ndarray] = {}
        self._lock = threading.Lock()

    # ---------- construction

    @classmethod
    def from_arrows(cls, algebra: str, basis: Iterable[Tuple[str, int]], arrows: Iterable[Arrow],
                    name: str = '') -> 'FiniteModule':
        """Module from `sq g source = targets` data; omitted actions are zero"""
        basis, _ = _sorted_basis(basis)
        tag = normalize_tag(algebra)
        degree_of = dict(basis)
        if len(degree_of) != len(basis):
            raise ModuleDefinitionError('Duplicate basis names')
        span = (basis[-1][1] - basis[0][1]) if basis else 0
        allowed = sq_degrees(tag, span)
        positions: Dict[str, int] = {}
        counts: Dict[int, int] = {}
        for n, d in basis:
            positions[n] = counts.get(d, 0)
            counts[d] = counts.get(d, 0) + 1
        actions: Blocks = {}
        for g, source, targets in arrows:
            g = int(g)
            if g not in allowed:
                raise ModuleDefinitionError(f'Sq{g} is not a generator of {tag} on this module')
            if source not in degree_of:
                raise ModuleDefinitionError(f"Unknown basis element '{source}'")
            d = degree_of[source]
            block = actions.setdefault(g, {}).setdefault(
                d, np.zeros((counts.get(d + g, 0), counts[d]), dtype=np.uint8))
            for target in targets:
                if target not in degree_of:
                    raise ModuleDefinitionError(f"Unknown basis element '{target}'")
                if degree_of[target] != d + g:
                    raise ModuleDefinitionError(
                        f'Sq{g} {source} = {target} does not raise degree by {g}')
                block[positions[target], positions[source]] ^= 1
        return cls(tag, basis, actions, name=name)

    @classmethod
    def from_matrices(cls, algebra: str, basis: Iterable[Tuple[str, int]],
                      matrices: Dict[int, np.ndarray], name: str = '') -> 'FiniteModule':
        """Module from full (dim x dim) generator matrices in the given basis order"""
        basis, order = _sorted_basis(basis)
        degrees = np.array([d for _, d in basis], dtype=np.int64)
        starts: Dict[int, int] = {}
        for i, d in enumerate(degrees):
            starts.setdefault(int(d), i)
        actions: Blocks = {}
        for g, matrix in matrices.items():
            matrix = to_gf2(matrix)[np.ix_(order, order)]
            rows, cols = np.nonzero(matrix)
            bad = degrees[rows] != degrees[cols] + g
            if bad.any():
                r, c = int(rows[bad][0]), int(cols[bad][0])
                raise ModuleDefinitionError(
                    f'Sq{g} sends {basis[c][0]} to {basis[r][0]}, which is not homogeneous')
            for d in sorted({int(degrees[c]) for c in cols}):
                source = slice(starts[d], starts[d] + int((degrees == d).sum()))
                target_start = starts.get(d + g, 0)
                target = slice(target_start, target_start + int((degrees == d + g).sum()))
                actions.setdefault(g, {})[d] = matrix[target, source]
        return cls(algebra, basis, actions, name=name)

    # ---------- structure

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f'<FiniteModule {self.name or "?"} over {self.algebra}, dim {len(self)}>'

    @property
    def dimension(self) -> int:
        return len(self.names)

    @property
    def basis(self) -> Basis:
        return list(zip(self.names, self.degrees))

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def graded_dimension(self) -> Dict[int, int]:
        return dict(sorted(self.dims.items()))

    def positions(self, d: int) -> slice:
        start = self.offsets.get(d, 0)
        return slice(start, start + self.dim(d))

    @property
    def tables(self) -> AlgebraTables:
        if top_degree(self.algebra) is None:
            return get_tables(self.algebra, max(self.span, 0))
        return get_tables(self.algebra)

    def block(self, g: int, d: int) -> np.ndarray:
        found = self._actions.get(g, {}).get(d)
        if found is not None:
            return found
        return np.zeros((self.dim(d + g), self.dim(d)), dtype=np.uint8)

    def milnor_block(self, i: int, d: int) -> np.ndarray:
        """Action of the i-th Milnor basis element of self.tables from degree d"""
        key = (i, d)
        found = self._milnor.get(key)
        if found is not None:
            return found
        tables = self.tables
        degree = tables.degrees[i]
        source, target = self.dim(d), self.dim(d + degree)
        if degree == 0:
            block = np.eye(source, dtype=np.uint8)
        else:
            block = np.zeros((target, source), dtype=np.uint8)
            if source and target:
                for k, j in tables.decomposition(i):
                    inner = self.milnor_block(j, d)
                    block ^= gf2_matmul(self.block(2 ** k, d + tables.degrees[j]), inner)
        with self._lock:
            self._milnor[key] = block
        return block

    def warm(self) -> 'FiniteModule':
        """Fill the derived action memo so concurrent readers never write"""
        tables = self.tables
        for i in range(len(tables)):
            for d in self.dims:
                self.milnor_block(i, d)
        return self

    def full_matrix(self, g: int) -> np.ndarray:
        matrix = np.zeros((len(self), len(self)), dtype=np.uint8)
        for d, block in self._actions.get(g, {}).items():
            matrix[self.positions(d + g), self.positions(d)] = block
        return matrix

    def milnor_matrix(self, i: int) -> np.ndarray:
        matrix = np.zeros((len(self), len(self)), dtype=np.uint8)
        degree = self.tables.degrees[i]
        for d in self.dims:
            block = self.milnor_block(i, d)
            if block.size:
                matrix[self.positions(d + degree), self.positions(d)] = block
        return matrix

    def milnor_indices(self, element) -> List[int]:
        """Table indices of the Milnor terms of an element, dropping terms above the degree span"""
        milnor = element.to_milnor() if isinstance(element, SteenrodElement) else element
        if not isinstance(milnor, MilnorElement):
            raise TypeError(f'Cannot act by {type(element).__name__}')
        tables = self.tables
        indices = []
        for r in milnor.terms:
            if not in_profile(r, self.algebra):
                raise NotInSubalgebraError(f'{element} does not lie in {self.algebra}')
            i = tables.index.get(r)
            if i is not None:
                indices.append(i)
        return sorted(indices)

    def operation_matrix(self, element) -> np.ndarray:
        matrix = np.zeros((len(self), len(self)), dtype=np.uint8)
        for i in self.milnor_indices(element):
            matrix ^= self.milnor_matrix(i)
        return matrix

    def act(self, element, vector) -> np.ndarray:
        return gf2_matmul(self.operation_matrix(element), to_gf2(vector).reshape(-1, 1)).reshape(-1)

    def sq_matrix(self, a: int) -> np.ndarray:
        """Full matrix of Sq^a = Sq(a); zero beyond the degree span"""
        if a == 0:
            return np.eye(len(self), dtype=np.uint8)
        i = self.tables.index.get((a,))
        if i is None:
            return np.zeros((len(self), len(self)), dtype=np.uint8)
        return self.milnor_matrix(i)

    def vector(self, *names: str) -> np.ndarray:
        vector = np.zeros(len(self), dtype=np.uint8)
        for n in names:
            if n not in self.index:
                raise ModuleDefinitionError(f"Unknown basis element '{n}'")
            vector[self.index[n]] ^= 1
        return vector

    def support(self, vector) -> List[str]:
        return [self.names[i] for i in np.flatnonzero(to_gf2(vector))]

    def degree_of(self, vector) -> Optional[int]:
        """Degree of a homogeneous nonzero vector, None for zero"""
        degrees = {self.degrees[i] for i in np.flatnonzero(to_gf2(vector))}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise ModuleDefinitionError(f'Inhomogeneous vector with degrees {sorted(degrees)}')
        return degrees.pop()

    def arrows(self) -> List[Arrow]:
        found = []
        for g in sorted(self._actions):
            for d in sorted(self._actions[g]):
                block = self._actions[g][d]
                for c in range(block.shape[1]):
                    targets = [self.names[self.offsets[d + g] + r] for r in np.flatnonzero(block[:, c])]
                    if targets:
                        found.append((g, self.names[self.offsets[d] + c], targets))
        return found

    def renamed(self, name: str) -> 'FiniteModule':
        return FiniteModule(self.algebra, self.basis, self._actions, name=name, truncation=self.truncation)

    def relabeled(self, names: Sequence[str]) -> 'FiniteModule':
        return FiniteModule(self.algebra, list(zip(names, self.degrees)), self._actions, name=self.name,
                            truncation=self.truncation)

    def truncated_at(self, truncation: Optional[int]) -> 'FiniteModule':
        self.truncation = truncation
        return self

    def same_structure(self, other: 'FiniteModule') -> bool:
        """Equal bases (names and degrees) and equal generator actions"""
        if self.algebra != other.algebra or self.basis != other.basis:
            return False
        for g in set(self.generators) | set(other.generators):
            if not np.array_equal(self.full_matrix(g), other.full_matrix(g)):
                return False
        return True

    def validate(self) -> dict:
        return validate(self)

    def validated(self) -> 'FiniteModule':
        report = validate(self)
        if not report['valid']:
            first = report['violations'][0]
            raise ModuleValidationError(
                f"{self.name or 'Module'} is not an {self.algebra}-module: "
                f"{first['relation']} fails from degree {first['source_degree']}", report)
        return self


def _milnor_label(r: Tuple[int, ...]) -> str:
    return 'M(' + ','.join(str(x) for x in r) + ')' if r else '1'


def validate(m: FiniteModule) -> dict:
    """Check rho(Sq^{2^k}) rho(Sq(R)) = rho(Sq^{2^k} Sq(R)) for every generator and basis element.

    The derived action rho(Sq(R)) comes from one fixed generator decomposition, so these
    identities hold exactly when the generator matrices extend to an action of the algebra.
    """
    tables = m.tables
    violations = []
    degrees = sorted(m.dims)
    for k, gi in tables.generators:
        g = 2 ** k
        for j in range(len(tables)):
            if tables.degrees[j] + g > tables.max_degree:
                continue
            product = tables.product(gi, j)
            for d in degrees:
                top = d + tables.degrees[j] + g
                if not m.dim(top):
                    continue
                lhs = gf2_matmul(m.block(g, d + tables.degrees[j]), m.milnor_block(j, d))
                rhs = np.zeros_like(lhs)
                for c in product:
                    rhs ^= m.milnor_block(c, d)
                difference = lhs ^ rhs
                if difference.any():
                    violations.append({
                        'relation': f'Sq{g} * {_milnor_label(tables.basis[j])}',
                        'source_degree': d,
                        'target_degree': top,
                        'entries': int(difference.sum()),
                    })
    report = {
        'valid': not violations,
        'module': m.name,
        'algebra': m.algebra,
        'dimension': len(m),
        'graded_dimension': m.graded_dimension(),
        'violations': violations,
    }
    if violations:
        logger.info('%s fails %d relations over %s', m.name or 'module', len(violations), m.algebra)
    return report


# ---------- constructors

def trivial_module(algebra: str = 'A2', degree: int = 0, name: str = 'F2') -> FiniteModule:
    return FiniteModule(algebra, [('i', degree)], name=name)


def suspend(m: FiniteModule, k: int, name: Optional[str] = None) -> FiniteModule:
    actions = {g: {d + k: b for d, b in blocks.items()} for g, blocks in m._actions.items()}
    if name is None:
        name = f'S{k}{m.name}' if k else m.name
    truncation = None if m.truncation is None else m.truncation + k
    return FiniteModule(m.algebra, [(n, d + k) for n, d in m.basis], actions, name=name, truncation=truncation)


def _least_truncation(bounds: Iterable[Optional[int]]) -> Optional[int]:
    known = [b for b in bounds if b is not None]
    return min(known) if known else None


def _common_algebra(modules: Sequence[FiniteModule]) -> str:
    tags = {m.algebra for m in modules}
    if len(tags) > 1:
        raise AlgebraMismatchError(f'Modules over different algebras: {sorted(tags)}')
    return tags.pop() if tags else 'A2'


def direct_sum(modules: Sequence[FiniteModule], labels: Optional[Sequence[str]] = None,
               name: str = '') -> FiniteModule:
    """Direct sum; basis names are prefixed by labels when given or when they collide"""
    algebra = _common_algebra(modules)
    all_names = [n for m in modules for n in m.names]
    if labels is None and len(set(all_names)) != len(all_names):
        labels = [f'm{i}_' for i in range(len(modules))]
    basis: Basis = []
    for i, m in enumerate(modules):
        prefix = labels[i] if labels else ''
        basis.extend((prefix + n, d) for n, d in m.basis)
    size = len(basis)
    span = (max(d for _, d in basis) - min(d for _, d in basis)) if basis else 0
    matrices = {}
    for g in sq_degrees(algebra, span):
        matrix = np.zeros((size, size), dtype=np.uint8)
        offset = 0
        for m in modules:
            matrix[offset:offset + len(m), offset:offset + len(m)] = m.full_matrix(g)
            offset += len(m)
        matrices[g] = matrix
    result = FiniteModule.from_matrices(algebra, basis, matrices,
                                        name=name or ' + '.join(m.name for m in modules))
    return result.truncated_at(_least_truncation(m.truncation for m in modules))


def restrict(m: FiniteModule, algebra: str) -> FiniteModule:
    """The same vector space viewed over a subalgebra"""
    tag = normalize_tag(algebra)
    if ALGEBRA_RANK[tag] > ALGEBRA_RANK[m.algebra]:
        raise AlgebraMismatchError(f'{tag} is not a subalgebra of {m.algebra}')
    keep = set(sq_degrees(tag, m.span))
    actions = {g: blocks for g, blocks in m._actions.items() if g in keep}
    return FiniteModule(tag, m.basis, actions, name=m.name, truncation=m.truncation)


def tensor(m1: FiniteModule, m2: FiniteModule, name: str = '') -> FiniteModule:
    """Tensor product with the Cartan diagonal Sq^g = sum_a Sq^a (x) Sq^{g-a}"""
    algebra = _common_algebra([m1, m2])
    basis = [(f'{a}.{b}', da + db) for a, da in m1.basis for b, db in m2.basis]
    span = m1.span + m2.span
    matrices = {}
    for g in sq_degrees(algebra, span):
        matrix = np.zeros((len(basis), len(basis)), dtype=np.uint8)
        for a in range(g + 1):
            left, right = m1.sq_matrix(a), m2.sq_matrix(g - a)
            if left.any() and right.any():
                matrix ^= np.kron(left, right).astype(np.uint8) & 1
        matrices[g] = matrix
    result = FiniteModule.from_matrices(algebra, basis, matrices, name=name or f'{m1.name}.{m2.name}')
    bounds = [None if m1.truncation is None else m1.truncation + m2.min_degree,
              None if m2.truncation is None else m2.truncation + m1.min_degree]
    return result.truncated_at(_least_truncation(bounds))


def dualize(m: FiniteModule, name: Optional[str] = None) -> FiniteModule:
    """Contragredient dual: <theta f, v> = <f, chi(theta) v>, degrees negated"""
    basis = [(dual_name(n), -d) for n, d in m.basis]
    matrices = {}
    for g in m.generators:
        chi = conjugate(adem_reduce([g], 'A'))
        matrices[g] = m.operation_matrix(chi).T.copy()
    if name is None:
        name = m.name[2:-1] if m.name.startswith('D(') and m.name.endswith(')') else f'D({m.name})'
    return FiniteModule.from_matrices(m.algebra, basis, matrices, name=name)


def truncated_projective(kind: str, max_degree: int, algebra: str = 'A2') -> FiniteModule:
    """H*(P_1) through max_degree, or Q: the same plus x_i for i in {-9,-5,-3,-2,-1}

    Sq^j x_i = binom(i, j) x_{i+j}; targets that are not basis classes are zero.
    """
    if max_degree < 1:
        raise ModuleDefinitionError('max_degree must be at least 1')
    indices = list(range(1, max_degree + 1))
    if kind == 'Q':
        indices = [-9, -5, -3, -2, -1] + indices
    elif kind != 'P1':
        raise ModuleDefinitionError(f"Unknown projective-space kind '{kind}'")
    present = set(indices)
    span = indices[-1] - indices[0]
    arrows = []
    for i in indices:
        for g in sq_degrees(algebra, span):
            if i + g in present and binomial_mod2(i, g):
                arrows.append((g, f'x{i}', [f'x{i + g}']))
    return FiniteModule.from_arrows(algebra, [(f'x{i}', i) for i in indices], arrows,
                                    name=f'{kind}[{max_degree}]').truncated_at(max_degree)


# ---------- submodules and quotients

def _closure(m: FiniteModule, vectors: Iterable) -> Dict[int, EchelonBasis]:
    spaces = {d: EchelonBasis(m.dim(d)) for d in m.dims}
    queue = []
    for v in vectors:
        v = to_gf2(v).reshape(-1)
        for d in m.dims:
            component = v[m.positions(d)]
            if component.any():
                queue.append((d, component))
    while queue:
        d, component = queue.pop()
        if not spaces[d].add(component):
            continue
        for g in m.generators:
            if not m.dim(d + g):
                continue
            image = gf2_matmul(m.block(g, d), component.reshape(-1, 1)).reshape(-1)
            if image.any():
                queue.append((d + g, image))
    return spaces


def _echelon(space: EchelonBasis) -> Tuple[List[int], np.ndarray]:
    """Pivots in ascending order with the matching reduced rows"""
    if not len(space):
        return [], np.zeros((0, space.ncols), dtype=np.uint8)
    order = np.argsort(space.pivots)
    return [space.pivots[i] for i in order], space.dense()[order]


def submodule(m: FiniteModule, vectors: Iterable, name: str = '') -> Tuple[FiniteModule, 'ModuleMap']:
    """Submodule generated by vectors, with its inclusion.

    The basis in each degree is the reduced echelon basis; each element is named after the
    basis element at its pivot.
    """
    spaces = _closure(m, vectors)
    basis: Basis = []
    columns = []
    echelon = {}
    for d in sorted(spaces):
        pivots, rows = _echelon(spaces[d])
        echelon[d] = (pivots, rows)
        for p, row in zip(pivots, rows):
            basis.append((m.names[m.offsets[d] + p], d))
            full = np.zeros(len(m), dtype=np.uint8)
            full[m.positions(d)] = row
            columns.append(full)
    actions: Blocks = {}
    for g in m.generators:
        for d, (pivots, rows) in echelon.items():
            if not pivots or d + g not in echelon or not echelon[d + g][0]:
                continue
            images = gf2_matmul(m.block(g, d), rows.T)
            target_pivots = echelon[d + g][0]
            actions.setdefault(g, {})[d] = images[target_pivots, :]
    sub = FiniteModule(m.algebra, basis, actions, name=name or f'sub({m.name})', truncation=m.truncation)
    inclusion = np.array(columns, dtype=np.uint8).T if columns else np.zeros((len(m), 0), dtype=np.uint8)
    return sub, ModuleMap(sub, m, inclusion.reshape(len(m), len(sub)))


def quotient(m: FiniteModule, vectors: Iterable, name: str = '') -> Tuple[FiniteModule, 'ModuleMap']:
    """Quotient by the submodule generated by vectors, with the projection.

    The quotient basis is the set of basis elements of m at non-pivot positions.
    """
    spaces = _closure(m, vectors)
    basis: Basis = []
    projections: Dict[int, Tuple[List[int], np.ndarray]] = {}
    for d in sorted(m.dims):
        pivots, rows = _echelon(spaces[d])
        free = [c for c in range(m.dim(d)) if c not in set(pivots)]
        projection = np.zeros((len(free), m.dim(d)), dtype=np.uint8)
        for q, c in enumerate(free):
            projection[q, c] = 1
        for p, row in zip(pivots, rows):
            projection[:, p] = row[free]
        projections[d] = (free, projection)
        basis.extend((m.names[m.offsets[d] + c], d) for c in free)
    actions: Blocks = {}
    for g in m.generators:
        for d, (free, _) in projections.items():
            if not free or d + g not in projections or not projections[d + g][0]:
                continue
            images = m.block(g, d)[:, free]
            actions.setdefault(g, {})[d] = gf2_matmul(projections[d + g][1], images)
    q = FiniteModule(m.algebra, basis, actions, name=name or f'{m.name}/sub', truncation=m.truncation)
    matrix = np.zeros((len(q), len(m)), dtype=np.uint8)
    for d, (free, projection) in projections.items():
        if free:
            matrix[q.positions(d), m.positions(d)] = projection
    return q, ModuleMap(m, q, matrix)


def skeleton(m: FiniteModule, top: int, name: str = '') -> FiniteModule:
    """Cohomology of the top-skeleton: the quotient by every class above degree `top`"""
    vectors = [m.vector(n) for n, d in m.basis if d > top]
    return quotient(m, vectors, name=name or f'{m.name}^({top})')[0]


def is_cyclic_on(m: FiniteModule, vector) -> bool:
    sub, _ = submodule(m, [vector])
    return len(sub) == len(m)


def annihilator_agrees(m: FiniteModule, v, n: FiniteModule, w, max_degree: Optional[int] = None) -> bool:
    """Whether theta v = 0 exactly when theta w = 0, for theta of every degree up to max_degree"""
    algebra = _common_algebra([m, n])
    if max_degree is None:
        max_degree = max(m.span, n.span)
    tables = get_tables(algebra, None if top_degree(algebra) is not None else max_degree)
    for e in range(min(max_degree, tables.max_degree) + 1):
        rows_m, rows_n = [], []
        for i in tables.by_degree.get(e, []):
            theta = MilnorElement(algebra, frozenset([tables.basis[i]]), e)
            rows_m.append(m.act(theta, v))
            rows_n.append(n.act(theta, w))
        if not rows_m:
            continue
        em, en = np.array(rows_m, dtype=np.uint8), np.array(rows_n, dtype=np.uint8)
        joined = np.concatenate([em, en], axis=1)
        r = rank(joined)
        if rank(em) != r or rank(en) != r:
            return False
    return True


def cyclic_isomorphism(m: FiniteModule, v, n: FiniteModule, w) -> dict:
    """Two modules cyclic on v and w with equal annihilators are isomorphic by theta v -> theta w"""
    source_cyclic = is_cyclic_on(m, v)
    target_cyclic = is_cyclic_on(n, w)
    same = annihilator_agrees(m, v, n, w)
    return {
        'isomorphic': source_cyclic and target_cyclic and same,
        'source_cyclic': source_cyclic,
        'target_cyclic': target_cyclic,
        'same_annihilator': same,
    }


# ---------- maps

@dataclass
class ModuleMap:
    """Homomorphism of finite modules raising degree by `shift`; matrix is (dim target, dim source)"""
    source: FiniteModule
    target: FiniteModule
    matrix: np.ndarray
    shift: int = 0
    name: str = ''

    def __post_init__(self):
        self.matrix = to_gf2(self.matrix).reshape(len(self.target), len(self.source))

    @classmethod
    def identity(cls, m: FiniteModule) -> 'ModuleMap':
        return cls(m, m, np.eye(len(m), dtype=np.uint8), name='id')

    @classmethod
    def zero(cls, source: FiniteModule, target: FiniteModule, shift: int = 0) -> 'ModuleMap':
        return cls(source, target, np.zeros((len(target), len(source)), dtype=np.uint8), shift, name='0')

    @classmethod
    def from_images(cls, source: FiniteModule, target: FiniteModule, images: Dict[str, np.ndarray],
                    shift: int = 0, name: str = '') -> 'ModuleMap':
        """Map given on every source basis element; missing names map to zero"""
        matrix = np.zeros((len(target), len(source)), dtype=np.uint8)
        for n, vector in images.items():
            if n not in source.index:
                raise ModuleDefinitionError(f"Unknown basis element '{n}'")
            matrix[:, source.index[n]] = to_gf2(vector).reshape(-1)
        return cls(source, target, matrix, shift, name)

    def apply(self, vector) -> np.ndarray:
        return gf2_matmul(self.matrix, to_gf2(vector).reshape(-1, 1)).reshape(-1)

    def block(self, d: int) -> np.ndarray:
        """Matrix from source degree d to target degree d + shift"""
        return self.matrix[self.target.positions(d + self.shift), self.source.positions(d)]

    def compose(self, other: 'ModuleMap') -> 'ModuleMap':
        """self o other"""
        if other.target is not self.source and other.target.basis != self.source.basis:
            raise ModuleDefinitionError('Maps are not composable')
        return ModuleMap(other.source, self.target, gf2_matmul(self.matrix, other.matrix),
                         self.shift + other.shift)

    def __add__(self, other: 'ModuleMap') -> 'ModuleMap':
        if self.shift != other.shift:
            raise ModuleDefinitionError('Adding maps of different degree')
        return ModuleMap(self.source, self.target, self.matrix ^ other.matrix, self.shift)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def rank(self) -> int:
        return rank(self.matrix)

    def preimage(self, vector) -> Optional[np.ndarray]:
        """Some x with f(x) = vector, or None"""
        return Solver(self.matrix.T).solve(vector)

    def check(self) -> dict:
        """Degree and generator-commutation check"""
        rows, cols = np.nonzero(self.matrix)
        degree_errors = [
            {'source': self.source.names[c], 'target': self.target.names[r]}
            for r, c in zip(rows, cols)
            if self.target.degrees[r] != self.source.degrees[c] + self.shift
        ]
        violations = []
        for g in sorted(set(self.source.generators) | set(self.target.generators)):
            lhs = gf2_matmul(self.target.full_matrix(g), self.matrix)
            rhs = gf2_matmul(self.matrix, self.source.full_matrix(g))
            for c in np.flatnonzero((lhs ^ rhs).any(axis=0)):
                violations.append({'generator': g, 'source': self.source.names[c]})
        return {
            'valid': not degree_errors and not violations,
            'degree_errors': degree_errors,
            'violations': violations,
        }

    def kernel(self, name: str = '') -> Tuple[FiniteModule, 'ModuleMap']:
        vectors = []
        for d in self.source.dims:
            basis = null_space(self.block(d).T)
            for row in basis:
                full = np.zeros(len(self.source), dtype=np.uint8)
                full[self.source.positions(d)] = row
                vectors.append(full)
        return submodule(self.source, vectors, name=name or f'ker {self.name}'.strip())

    def image(self, name: str = '') -> Tuple[FiniteModule, 'ModuleMap']:
        return submodule(self.target, list(self.matrix.T), name=name or f'im {self.name}'.strip())

    def cokernel(self, name: str = '') -> Tuple[FiniteModule, 'ModuleMap']:
        return quotient(self.target, list(self.matrix.T), name=name or f'coker {self.name}'.strip())


def cyclic_map(source: FiniteModule, v, target: FiniteModule, w, name: str = '') -> ModuleMap:
    """The map theta v -> theta w out of a module cyclic on v"""
    algebra = _common_algebra([source, target])
    v, w = to_gf2(v).reshape(-1), to_gf2(w).reshape(-1)
    dv, dw = source.degree_of(v), target.degree_of(w)
    if dv is None or dw is None:
        raise ModuleDefinitionError('cyclic_map needs homogeneous nonzero vectors')
    tables = get_tables(algebra, None if top_degree(algebra) is not None else source.span)
    matrix = np.zeros((len(target), len(source)), dtype=np.uint8)
    for d in source.dims:
        e = d - dv
        columns = source.positions(d)
        if e < 0 or e > tables.max_degree:
            raise ModuleDefinitionError(f'{source.name} is not generated by the given vector in degree {d}')
        rows_source, rows_target = [], []
        for i in tables.by_degree.get(e, []):
            theta = MilnorElement(algebra, frozenset([tables.basis[i]]), e)
            rows_source.append(source.act(theta, v)[columns])
            rows_target.append(target.act(theta, w))
        solver = Solver(np.array(rows_source, dtype=np.uint8).reshape(len(rows_source), source.dim(d)))
        images = np.array(rows_target, dtype=np.uint8).reshape(len(rows_target), len(target))
        for c in range(source.dim(d)):
            unit = np.zeros(source.dim(d), dtype=np.uint8)
            unit[c] = 1
            x = solver.solve(unit)
            if x is None:
                raise ModuleDefinitionError(f'{source.names[source.offsets[d] + c]} is not a multiple of the generator')
            matrix[:, source.offsets[d] + c] = gf2_matmul(x.reshape(1, -1), images).reshape(-1)
    f = ModuleMap(source, target, matrix, dw - dv, name=name)
    report = f.check()
    if not report['valid']:
        raise ModuleDefinitionError(f"theta v -> theta w is not well defined on {source.name}: {report['violations'][:3]}")
    return f


def factor_through(f: ModuleMap, inclusion: ModuleMap, name: str = '') -> ModuleMap:
    """g with inclusion o g = f, for f landing in the image of an injective map"""
    matrix = np.zeros((len(inclusion.source), len(f.source)), dtype=np.uint8)
    for d in f.source.dims:
        target_degree = d + f.shift
        if not inclusion.source.dim(target_degree - inclusion.shift):
            if f.block(d).any():
                raise ModuleDefinitionError(f'{f.name or "Map"} leaves the image in degree {target_degree}')
            continue
        block = inclusion.block(target_degree - inclusion.shift)
        solver = Solver(block.T)
        for c, column in enumerate(f.block(d).T):
            x = solver.solve(column)
            if x is None:
                raise ModuleDefinitionError(f'{f.name or "Map"} leaves the image in degree {target_degree}')
            rows = inclusion.source.positions(target_degree - inclusion.shift)
            matrix[rows, f.source.offsets[d] + c] = x
    return ModuleMap(f.source, inclusion.source, matrix, f.shift - inclusion.shift, name=name or f.name)


def descend(f: ModuleMap, p: ModuleMap, name: str = '') -> ModuleMap:
    """h with h o p = f, for p surjective and f vanishing on the kernel of p"""
    shift = f.shift - p.shift
    matrix = np.zeros((len(f.target), len(p.target)), dtype=np.uint8)
    for d in p.target.dims:
        source_degree = d - p.shift
        solver = Solver(p.block(source_degree).T)
        images = f.block(source_degree)
        for c in range(p.target.dim(d)):
            unit = np.zeros(p.target.dim(d), dtype=np.uint8)
            unit[c] = 1
            x = solver.solve(unit)
            if x is None:
                raise ModuleDefinitionError(f'{p.name or "Projection"} is not onto in degree {d}')
            matrix[f.target.positions(d + shift), p.target.offsets[d] + c] = gf2_matmul(images, x.reshape(-1, 1)).reshape(-1)
    h = ModuleMap(p.target, f.target, matrix, shift, name=name or f.name)
    if not np.array_equal(h.compose(p).matrix, f.matrix):
        raise ModuleDefinitionError(f'{f.name or "Map"} does not vanish on the kernel of {p.name or "projection"}')
    return h
