"""
Chain maps between minimal resolutions, and the maps they induce on Ext

A class of Ext^{s0}(M, N) given by a cocycle F_{s0} -> N is lifted step by step to
f_k: F_{s0+k} -> G_k, where G resolves N: f_0 solves eps(f_0(g)) = c(g) and
f_k solves d(f_k(y)) = f_{k-1}(d y). Reading off the coefficient of a generator b of G_k
in f_k(y) gives the Yoneda composite of the class with the class dual to b.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from gmod.modules import FiniteModule, ModuleMap
from .exceptions import InexactSequenceError, LiftingError, WindowError
from .extchart import HOPF_KINDS, ext_chart
from .linalg import Solver, gf2_matmul, rank, to_gf2
from .resolution import Resolution

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass(frozen=True)
class ExtClass:
    """Element of Ext^{s,t}: coefficients over the generators of F_s in degree t"""
    s: int
    t: int
    coefficients: Tuple[int, ...]

    @property
    def stem(self) -> int:
        return self.t - self.s

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: 'ExtClass') -> 'ExtClass':
        if (self.s, self.t) != (other.s, other.t):
            raise ValueError('Adding classes of different bidegrees')
        return ExtClass(self.s, self.t, tuple(a ^ b for a, b in zip(self.coefficients, other.coefficients)))


def basis_class(r: Resolution, s: int, t: int, index: int = 0) -> ExtClass:
    """The class dual to the index-th generator of F_s in degree t"""
    count = r.ext_dim(s, t)
    if not 0 <= index < count:
        raise WindowError(f'Ext^{{{s},{t}}} of {r.name} has dimension {count}; no class {index}')
    return ExtClass(s, t, tuple(int(i == index) for i in range(count)))


def _module_block_action(module: FiniteModule, milnor: Tuple[int, ...], vector: np.ndarray, d: int,
                         target: int) -> np.ndarray:
    """Sq(R) on a degree-d block vector of the module, as a block vector in degree `target`"""
    i = module.tables.index.get(milnor)
    if i is None or not module.dim(target) or not module.dim(d):
        return np.zeros(module.dim(target), dtype=np.uint8)
    return gf2_matmul(module.milnor_block(i, d), vector.reshape(-1, 1)).reshape(-1)


@dataclass
class ChainMap:
    """f_k: F_{s0+k} -> G_k lowering internal degree by t_shift.

    maps[k][y] is f_k of the y-th generator of F_{s0+k}, a vector of G_k in degree
    deg y - t_shift.
    """
    source: Resolution
    target: Resolution
    s0: int
    t_shift: int
    maps: List[List[np.ndarray]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.maps)

    def image(self, k: int, y: int) -> np.ndarray:
        return self.maps[k][y]

    def coefficient(self, k: int, y: int, b: int) -> int:
        """Coefficient of the generator b of G_k itself in f_k(y)"""
        t = self.source.free[self.s0 + k].degree(y) - self.t_shift
        return self.target.free[k].unit_coefficient(self.maps[k][y], t, b)

    def compose_class(self, b: ExtClass) -> ExtClass:
        """Yoneda composite of the lifted class with a class of Ext(N)"""
        k = b.s
        if k >= self.length:
            raise WindowError(f'Chain map lifted through {self.length - 1} steps; need {k}')
        t = b.t + self.t_shift
        s = self.s0 + k
        ys = self.source.generators_in(s, t)
        bs = self.target.generators_in(k, b.t)
        if any(y >= len(self.maps[k]) for y in ys):
            raise WindowError(f'Ext^{{{s},{t}}} lies beyond the lifted window')
        coefficients = []
        for y in ys:
            bit = 0
            for c, g in zip(b.coefficients, bs):
                if c:
                    bit ^= self.coefficient(k, y, g)
            coefficients.append(bit)
        return ExtClass(s, t, tuple(coefficients))


class _Lifter:
    """Degreewise solvers for d(z) = w in the target resolution"""

    def __init__(self, source: Resolution, target: Resolution, t_shift: int):
        if source.algebra != target.algebra:
            raise LiftingError(f'Resolutions over {source.algebra} and {target.algebra}')
        self.source, self.target, self.t_shift = source, target, t_shift
        self._solvers: Dict[Cell, Solver] = {}
        self._translate: Dict[int, int] = {}

    def solver(self, k: int, u: int) -> Solver:
        key = (k, u)
        if key not in self._solvers:
            if u > self.target.t_max or k > self.target.s_max:
                raise WindowError(f'Lifting needs the target resolution at (s, t) = ({k}, {u})')
            self._solvers[key] = Solver(self.target.d_matrix(k, u))
        return self._solvers[key]

    def milnor(self, j: int) -> int:
        """Index in the target tables of the j-th Milnor element of the source tables"""
        if self.source.tables is self.target.tables:
            return j
        if j not in self._translate:
            r = self.source.tables.basis[j]
            found = self.target.tables.index.get(r)
            if found is None:
                raise WindowError(f'Sq{r} lies beyond the target tables')
            self._translate[j] = found
        return self._translate[j]

    def solve(self, k: int, u: int, w: np.ndarray, what: str) -> np.ndarray:
        free = self.target.free[k]
        if not w.any():
            return free.zero(u)
        x = self.solver(k, u).solve(w)
        if x is None:
            raise LiftingError(f'No lift of {what} into {self.target.name} at (s, t) = ({k}, {u})')
        return x


def lift_chain_map(source: Resolution, target: Resolution, initial: Dict[int, np.ndarray], s0: int = 0,
                   t_shift: int = 0, length: Optional[int] = None) -> ChainMap:
    """Lift a cocycle F_{s0} -> N, given on generators as full vectors of N, to a chain map.

    Generators missing from `initial` map to zero. Raises LiftingError when the data is
    not a cocycle and WindowError when the target window is too small.
    """
    source.compute()
    target.compute()
    module = target.module
    if length is None:
        length = min(source.s_max - s0, target.s_max) + 1
    if s0 + length - 1 > source.s_max or length - 1 > target.s_max:
        raise WindowError('Lifting length exceeds the computed resolutions')
    lifter = _Lifter(source, target, t_shift)
    top = source.free[s0]
    values = {}
    for g in range(len(top)):
        vector = to_gf2(initial.get(g, np.zeros(len(module), dtype=np.uint8))).reshape(-1)
        d = top.degree(g) - t_shift
        block = vector[module.positions(d)] if module.dim(d) else np.zeros(0, dtype=np.uint8)
        if vector.sum() != block.sum():
            raise LiftingError(f'Cocycle value on {top.generators[g][0]} is not in degree {d}')
        values[g] = block

    if s0 + 1 < len(source.free):
        upper = source.free[s0 + 1]
        for y in range(len(upper)):
            ty = upper.degree(y)
            total = np.zeros(module.dim(ty - t_shift), dtype=np.uint8)
            for a, j in top.terms(source.image(s0 + 1, y), ty):
                da = top.degree(a) - t_shift
                total ^= _module_block_action(module, source.tables.basis[j], values[a], da, ty - t_shift)
            if total.any():
                raise LiftingError(f'Not a cocycle: nonzero on d({upper.generators[y][0]})')

    chain = ChainMap(source, target, s0, t_shift)
    first = []
    for g in range(len(top)):
        u = top.degree(g) - t_shift
        if u > target.t_max:
            # generators are listed by degree; the rest of the map is out of the window
            break
        first.append(lifter.solve(0, u, values[g], top.generators[g][0]) if values[g].any()
                     else target.free[0].zero(u))
    chain.maps.append(first)

    for k in range(1, length):
        lower_source = source.free[s0 + k - 1]
        upper_source = source.free[s0 + k]
        lower_target = target.free[k - 1]
        current = []
        for y in range(len(upper_source)):
            ty = upper_source.degree(y)
            u = ty - t_shift
            if u > target.t_max:
                break
            w = lower_target.zero(u)
            for a, j in lower_source.terms(source.image(s0 + k, y), ty):
                fa = chain.maps[k - 1][a]
                if fa.any():
                    da = lower_source.degree(a) - t_shift
                    w ^= lower_target.act(lifter.milnor(j), lower_target.pad(fa, da), da)
            current.append(lifter.solve(k, u, w, upper_source.generators[y][0]))
        chain.maps.append(current)
    logger.debug('Lifted a chain map from %s to %s through %d steps', source.name, target.name, length)
    return chain


def lift_class(source: Resolution, target: Resolution, a: ExtClass, length: Optional[int] = None) -> ChainMap:
    """Lift a class of Ext(M, F_2) to a chain map into a resolution of the trivial module"""
    unit = np.zeros(len(target.module), dtype=np.uint8)
    unit[target.module.positions(target.module.min_degree)] = 1
    gens = source.generators_in(a.s, a.t)
    initial = {g: unit for g, c in zip(gens, a.coefficients) if c}
    return lift_chain_map(source, target, initial, s0=a.s, t_shift=a.t - target.module.min_degree,
                          length=length)


def yoneda_product(source: Resolution, a: ExtClass, trivial: Resolution, b: ExtClass) -> ExtClass:
    """a . b for a in Ext(M) and b in Ext(F_2), by lifting a"""
    chain = lift_class(source, trivial, a, length=b.s + 1)
    return chain.compose_class(b)


# ---------- maps on Ext

@dataclass
class ExtMap:
    """Linear map Ext^{s,t}(X) -> Ext^{s+ds,t+dt}(Y); blocks[(s, t)] has shape (dim Y, dim X)"""
    source: Resolution
    target: Resolution
    ds: int
    dt: int
    blocks: Dict[Cell, np.ndarray] = field(default_factory=dict)
    name: str = ''

    def block(self, s: int, t: int) -> np.ndarray:
        found = self.blocks.get((s, t))
        if found is not None:
            return found
        return np.zeros((self.target.ext_dim(s + self.ds, t + self.dt), self.source.ext_dim(s, t)),
                        dtype=np.uint8)

    def apply(self, c: ExtClass) -> ExtClass:
        image = gf2_matmul(self.block(c.s, c.t), np.array(c.coefficients, dtype=np.uint8).reshape(-1, 1))
        return ExtClass(c.s + self.ds, c.t + self.dt, tuple(int(x) for x in image.reshape(-1)))

    def rank(self, s: int, t: int) -> int:
        return rank(self.block(s, t))

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks.values())

    def compose(self, other: 'ExtMap') -> 'ExtMap':
        """self o other, on the cells where other is defined"""
        blocks = {}
        for (s, t), b in other.blocks.items():
            cell = (s + other.ds, t + other.dt)
            if cell in self.blocks:
                blocks[(s, t)] = gf2_matmul(self.blocks[cell], b)
        return ExtMap(other.source, self.target, self.ds + other.ds, self.dt + other.dt, blocks)

    def cells(self) -> List[Cell]:
        return sorted(self.blocks)


def induced_map(f: ModuleMap, source: Resolution, target: Resolution) -> ExtMap:
    """f^*: Ext(N) -> Ext(M) for f: M -> N, with `source` resolving M and `target` resolving N"""
    if f.source is not source.module and f.source.basis != source.module.basis:
        raise LiftingError('The map does not start at the resolved module')
    source.compute()
    target.compute()
    initial = {g: f.apply(source.augmentation_vector(g)) for g in range(len(source.free[0]))}
    length = min(source.s_max, target.s_max) + 1
    chain = lift_chain_map(source, target, initial, s0=0, t_shift=-f.shift, length=length)
    return _chain_to_ext_map(chain, target, source, ds=0, dt=-f.shift, name=f.name)


def _chain_to_ext_map(chain: ChainMap, ext_source: Resolution, ext_target: Resolution, ds: int, dt: int,
                      name: str = '') -> ExtMap:
    blocks: Dict[Cell, np.ndarray] = {}
    for k in range(chain.length):
        s = chain.s0 + k
        for t in sorted({d for _, d in ext_source.generators(k)}):
            bs = ext_source.generators_in(k, t)
            ys = [y for y in ext_target.generators_in(s, t + dt) if y < len(chain.maps[k])]
            if len(ys) != ext_target.ext_dim(s, t + dt):
                continue
            block = np.zeros((len(ys), len(bs)), dtype=np.uint8)
            for row, y in enumerate(ys):
                for col, b in enumerate(bs):
                    block[row, col] = chain.coefficient(k, y, b)
            blocks[(k, t)] = block
    return ExtMap(ext_source, ext_target, ds, dt, blocks, name)


def check_short_exact(i: ModuleMap, p: ModuleMap) -> dict:
    """0 -> M1 -i-> M2 -p-> M3 -> 0 is a short exact sequence of modules"""
    maps_valid = i.check()['valid'] and p.check()['valid']
    injective = i.rank() == len(i.source)
    surjective = p.rank() == len(p.target)
    composite_zero = not gf2_matmul(p.matrix, i.matrix).any()
    middle = composite_zero and i.rank() + p.rank() == len(i.target)
    return {
        'valid': maps_valid and injective and surjective and middle,
        'maps_valid': maps_valid,
        'injective': injective,
        'surjective': surjective,
        'exact_middle': middle,
    }


def connecting_hom(i: ModuleMap, p: ModuleMap, sub: Resolution, quotient: Resolution) -> ExtMap:
    """delta: Ext^{s,t}(M1) -> Ext^{s+1,t}(M3) of 0 -> M1 -> M2 -> M3 -> 0.

    The sequence defines a cocycle F_1 -> M1 on the resolution of M3: lift the augmentation
    through p, apply it to d(y) and pull the result back along i. delta is the Yoneda
    composite with that cocycle.
    """
    report = check_short_exact(i, p)
    if not report['valid']:
        raise InexactSequenceError('The sequence is not short exact', report)
    if i.shift or p.shift:
        raise InexactSequenceError('Connecting maps need degree-preserving sequences', report)
    quotient.compute()
    sub.compute()
    middle = p.source
    f0 = quotient.free[0]
    sections = {}
    for g in range(len(f0)):
        d = f0.degree(g)
        block = p.block(d)
        x = Solver(block.T).solve(quotient.images[0][g]) if block.size else np.zeros(middle.dim(d), dtype=np.uint8)
        if x is None:
            raise InexactSequenceError(f'{f0.generators[g][0]} has no preimage in {middle.name}', report)
        sections[g] = x
    cocycle: Dict[int, np.ndarray] = {}
    if len(quotient.free) > 1:
        f1 = quotient.free[1]
        for y in range(len(f1)):
            ty = f1.degree(y)
            w = np.zeros(middle.dim(ty), dtype=np.uint8)
            for a, j in f0.terms(quotient.image(1, y), ty):
                w ^= _module_block_action(middle, quotient.tables.basis[j], sections[a], f0.degree(a), ty)
            if not w.any():
                continue
            block = i.block(ty)
            x = Solver(block.T).solve(w)
            if x is None:
                raise InexactSequenceError(f'd({f1.generators[y][0]}) does not land in the submodule', report)
            full = np.zeros(len(sub.module), dtype=np.uint8)
            full[sub.module.positions(ty)] = x
            cocycle[y] = full
    if len(quotient.free) < 2:
        return ExtMap(sub, quotient, 1, 0, {})
    length = min(quotient.s_max - 1, sub.s_max) + 1
    chain = lift_chain_map(quotient, sub, cocycle, s0=1, t_shift=0, length=length)
    return _chain_to_ext_map(chain, sub, quotient, ds=1, dt=0, name='delta')


def h_action(r: Resolution, i: int) -> ExtMap:
    """Multiplication by h_i as a map Ext^{s,t} -> Ext^{s+1,t+2^i}"""
    chart = ext_chart(r)
    kind = HOPF_KINDS[i]
    blocks: Dict[Cell, np.ndarray] = {}
    step = 2 ** i
    for s in range(r.s_max):
        for t in sorted({d for _, d in r.generators(s)}):
            if t + step > r.t_max:
                continue
            blocks[(s, t)] = np.zeros((r.ext_dim(s + 1, t + step), r.ext_dim(s, t)), dtype=np.uint8)
    for e in chart.edges_of(kind):
        (s, t, a), (_, _, b) = e.source, e.target
        if (s, t) in blocks:
            blocks[(s, t)][b, a] = 1
    return ExtMap(r, r, 1, step, blocks, name=kind)


def same_on_common_cells(a: ExtMap, b: ExtMap) -> bool:
    return all(np.array_equal(a.blocks[c], b.blocks[c]) for c in set(a.blocks) & set(b.blocks))


def class_from_vector(r: Resolution, s: int, t: int, bits: Sequence[int]) -> ExtClass:
    if len(bits) != r.ext_dim(s, t):
        raise WindowError(f'Ext^{{{s},{t}}} of {r.name} has dimension {r.ext_dim(s, t)}')
    return ExtClass(s, t, tuple(int(b) & 1 for b in bits))
