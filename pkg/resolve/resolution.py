"""
Minimal free resolutions over A(n)

Step s covers the cycles of step s - 1 degree by degree: in ascending internal degree t,
the images of the generators found so far are reduced to echelon form and every cycle
that is not yet in their span becomes a new generator of F_s. Cycles of a step are
independent across t and are computed in a thread pool; the generator choice itself is
sequential, so the result does not depend on the thread count.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np
from django.conf import settings

from gmod.modules import FiniteModule
from steenrod.algebra import top_degree
from steenrod.tables import AlgebraTables, get_tables
from .exceptions import WindowError
from .free import FreeModule
from .linalg import EchelonBasis, gf2_matmul, kernel, rank, to_gf2

logger = logging.getLogger(__name__)


def required_truncation(algebra: str, t_max: int) -> int:
    """Degree through which a truncated module must be exact to resolve through t_max"""
    return t_max + (top_degree(algebra) or 0)


def resolution_tables(module: FiniteModule, t_max: int) -> AlgebraTables:
    if top_degree(module.algebra) is None:
        return get_tables(module.algebra, max(t_max - module.min_degree, 1))
    return get_tables(module.algebra)


class Resolution:
    """Minimal free resolution F_0 <- F_1 <- ... of a finite module through (s_max, t_max).

    images[s][a] is d(a) for the a-th generator of F_s: a vector of F_{s-1} in degree
    deg a, or for s = 0 the image of a in the module, as a vector of M_{deg a}.
    """

    def __init__(self, module: FiniteModule, s_max: int, t_max: int, threads: Optional[int] = None,
                 name: str = ''):
        if s_max < 0:
            raise WindowError('s_max must be nonnegative')
        needed = required_truncation(module.algebra, t_max)
        if module.truncation is not None and module.truncation < needed:
            logger.warning('Refusing window t <= %d for %s: exact only through degree %d',
                           t_max, module.name, module.truncation)
            raise WindowError(
                f'{module.name or "Module"} is exact only through degree {module.truncation}; '
                f'resolving through t = {t_max} needs degree {needed}')
        self.module = module
        self.algebra = module.algebra
        self.s_max = s_max
        self.t_max = t_max
        self.t_min = module.min_degree if len(module) else t_max + 1
        self.threads = max(1, threads or getattr(settings, 'EXT2_THREADS', 1))
        self.name = name or module.name
        self.tables = resolution_tables(module, t_max)
        self.free: List[FreeModule] = []
        self.images: List[List[np.ndarray]] = []
        self._matrices: Dict[Tuple[int, int], np.ndarray] = {}
        self._module_index: Dict[int, Optional[int]] = {}
        self.seconds = 0.0
        self.computed = False

    def __repr__(self) -> str:
        return f'<Resolution {self.name or "?"} over {self.algebra}, s <= {self.s_max}, t <= {self.t_max}>'

    @property
    def degrees(self) -> range:
        return range(self.t_min, self.t_max + 1)

    # ---------- computation

    def compute(self) -> 'Resolution':
        if self.computed:
            return self
        start = time.perf_counter()
        for s in range(self.s_max + 1):
            step_start = time.perf_counter()
            self._step(s)
            logger.info('%s: F_%d has %d generators (%.2fs)', self.name or 'resolution', s,
                        len(self.free[s]), time.perf_counter() - step_start)
        self.seconds = time.perf_counter() - start
        self.computed = True
        return self

    def _cycles(self, s: int, t: int) -> np.ndarray:
        """Basis of the degree-t part of the space F_s must cover"""
        if s == 0:
            return np.eye(self.module.dim(t), dtype=np.uint8)
        matrix = self.d_matrix(s - 1, t)
        if matrix.shape[0] == 0:
            return np.zeros((0, 0), dtype=np.uint8)
        return kernel(matrix)

    def _step(self, s: int) -> None:
        degrees = list(self.degrees)
        if self.threads > 1 and len(degrees) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                cycles = dict(zip(degrees, pool.map(lambda t: self._cycles(s, t), degrees)))
        else:
            cycles = {t: self._cycles(s, t) for t in degrees}

        free = FreeModule(self.tables, name=f'F{s}')
        images: List[np.ndarray] = []
        self.free.append(free)
        self.images.append(images)
        for t in degrees:
            ambient = self._ambient_dim(s, t)
            rows = [self._image(s, a, j) for a, j in free.coords(t)]
            basis = EchelonBasis(ambient)
            for row in rows:
                basis.add(row)
            found = 0
            for cycle in cycles[t]:
                if basis.add(cycle):
                    suffix = f'_{found}' if found else ''
                    free.add_generator(f'i{t}{suffix}', t)
                    images.append(to_gf2(cycle).copy())
                    rows.append(images[-1])
                    found += 1
            self._matrices[(s, t)] = (np.array(rows, dtype=np.uint8).reshape(len(rows), ambient))
            if found:
                logger.debug('(s, t) = (%d, %d): %d cycles, %d new generators', s, t, len(cycles[t]), found)

    def _ambient_dim(self, s: int, t: int) -> int:
        return self.module.dim(t) if s == 0 else self.free[s - 1].dim(t)

    def _module_milnor(self, j: int) -> Optional[int]:
        if j not in self._module_index:
            self._module_index[j] = self.module.tables.index.get(self.tables.basis[j])
        return self._module_index[j]

    def _image(self, s: int, a: int, j: int) -> np.ndarray:
        """d(Sq(R_j) a) for the a-th generator of F_s"""
        source = self.free[s].degree(a)
        if s == 0:
            target = source + self.tables.degrees[j]
            i = self._module_milnor(j)
            if i is None or not self.module.dim(target):
                return np.zeros(self.module.dim(target), dtype=np.uint8)
            block = self.module.milnor_block(i, source)
            return gf2_matmul(block, self.images[0][a].reshape(-1, 1)).reshape(-1)
        lower = self.free[s - 1]
        return lower.act(j, lower.pad(self.images[s][a], source), source)

    # ---------- queries

    def d_matrix(self, s: int, t: int) -> np.ndarray:
        """Rows: images of the degree-t coordinates of F_s in F_{s-1} (in M for s = 0)"""
        found = self._matrices.get((s, t))
        if found is not None:
            return found
        if s >= len(self.free):
            raise WindowError(f'Homological degree {s} has not been computed')
        free = self.free[s]
        rows = [self._image(s, a, j) for a, j in free.coords(t)]
        matrix = np.array(rows, dtype=np.uint8).reshape(len(rows), self._ambient_dim(s, t))
        self._matrices[(s, t)] = matrix
        return matrix

    def image(self, s: int, a: int) -> np.ndarray:
        """d of the a-th generator of F_s, padded to the current coordinates"""
        vector = self.images[s][a]
        if s == 0:
            return vector
        return self.free[s - 1].pad(vector, self.free[s].degree(a))

    def augmentation_vector(self, a: int) -> np.ndarray:
        """Image of a generator of F_0 as a full module vector"""
        t = self.free[0].degree(a)
        full = np.zeros(len(self.module), dtype=np.uint8)
        full[self.module.positions(t)] = self.images[0][a]
        return full

    def generators(self, s: int) -> List[Tuple[str, int]]:
        return list(self.free[s].generators) if s < len(self.free) else []

    def generators_in(self, s: int, t: int) -> List[int]:
        return self.free[s].generators_in(t) if s < len(self.free) else []

    def ext_dim(self, s: int, t: int) -> int:
        return len(self.generators_in(s, t))

    def dims(self) -> Dict[Tuple[int, int], int]:
        """Ext^{s,t} dimensions, nonzero entries only"""
        self.compute()
        found: Dict[Tuple[int, int], int] = {}
        for s, free in enumerate(self.free):
            for _, t in free.generators:
                found[(s, t)] = found.get((s, t), 0) + 1
        return dict(sorted(found.items()))

    def in_window(self, s: int, t: int) -> bool:
        return 0 <= s <= self.s_max and t <= self.t_max

    def ext_chart(self):
        from .extchart import ext_chart
        return ext_chart(self)


def minimal_resolution(m: FiniteModule, s_max: int, t_max: int, threads: Optional[int] = None,
                       name: str = '') -> Resolution:
    return Resolution(m, s_max, t_max, threads=threads, name=name).compute()


def check_resolution(r: Resolution) -> dict:
    """d o d = 0, minimality and exactness in every computed bidegree"""
    r.compute()
    failures = []
    for s in range(len(r.free)):
        for t in r.degrees:
            current = r.d_matrix(s, t)
            if s > 0 and current.size:
                composite = gf2_matmul(current, r.d_matrix(s - 1, t))
                if composite.any():
                    failures.append({'kind': 'dd', 's': s, 't': t})
            if s > 0:
                for a in r.generators_in(s, t):
                    image = r.image(s, a)
                    if any(r.free[s - 1].unit_coefficient(image, t, b) for b in r.generators_in(s - 1, t)):
                        failures.append({'kind': 'minimality', 's': s, 't': t, 'generator': r.free[s].generators[a][0]})
            # F_s maps onto the cycles of F_{s-1} (onto M for s = 0)
            expected = r.module.dim(t) if s == 0 else r.d_matrix(s - 1, t).shape[0] - rank(r.d_matrix(s - 1, t))
            if rank(current) != expected:
                failures.append({'kind': 'exactness', 's': s, 't': t})
    kinds = {f['kind'] for f in failures}
    return {
        'valid': not failures,
        'dd_zero': 'dd' not in kinds,
        'minimal': 'minimality' not in kinds,
        'exact': 'exactness' not in kinds,
        'failures': failures,
    }
