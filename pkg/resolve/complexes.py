"""
Complexes of finitely presented modules, written out as finite-dimensional realizations

Complex files extend the module definition format:

    algebra A2
    name thm24
    resolves L
    gen 0 I0:0
    gen 1 I4:4 I6:6
    rel 1 Sq1 I6
    d 0 I0 = i
    d 1 I4 = Sq4 I0

`gen s name:t` adds cover generators to C_s, `rel s <element>` adds a relation of C_s and
`d s g = <element of C_{s-1}>` gives the differential on a generator. `d 0` lines map C_0
to the resolved module named by `resolves` (a library name or a .mod path).
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from gmod.exceptions import ModuleDefinitionError, UnknownModuleError
from gmod.modules import FiniteModule, ModuleMap
from gmod.presentations import PresentedModule, map_from_generators, present
from steenrod.algebra import MilnorElement, normalize_tag
from steenrod.exceptions import Ext2Error
from .linalg import Solver, gf2_matmul, rank, to_gf2

logger = logging.getLogger(__name__)


@dataclass
class ModuleComplex:
    """C_0 <- C_1 <- ... <- C_n, optionally augmented onto a module M.

    images[s][g] is the differential of the cover generator g of C_s, a vector of C_{s-1}
    (of M for s = 0).
    """
    algebra: str
    terms: List[PresentedModule]
    images: List[Dict[str, np.ndarray]]
    target: Optional[FiniteModule] = None
    name: str = ''
    _maps: Dict[int, ModuleMap] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.terms)

    def codomain(self, s: int) -> Optional[FiniteModule]:
        if s == 0:
            return self.target
        return self.terms[s - 1]

    def differential(self, s: int) -> ModuleMap:
        """d_s: C_s -> C_{s-1}; d_0 is the augmentation. Raises if a relation is not killed."""
        if s not in self._maps:
            codomain = self.codomain(s)
            if codomain is None:
                raise ModuleDefinitionError('The complex has no augmentation')
            self._maps[s] = map_from_generators(self.terms[s], codomain, self.images[s], name=f'd{s}')
        return self._maps[s]

    def with_image(self, s: int, generator: str, vector: np.ndarray) -> 'ModuleComplex':
        images = [dict(m) for m in self.images]
        images[s][generator] = to_gf2(vector)
        return ModuleComplex(self.algebra, self.terms, images, self.target, self.name)

    def generators(self, s: int) -> List[Tuple[str, int]]:
        return self.terms[s].cover_generators

    def shifted(self, k: int) -> 'ModuleComplex':
        """Every term suspended k times; the augmentation is dropped"""
        terms = [
            PresentedModule(self.algebra, [(n, d + k) for n, d in term.cover_generators], term.relations,
                            name=term.name)
            for term in self.terms
        ]
        images = [dict(m) for m in self.images]
        images[0] = {}
        return ModuleComplex(self.algebra, terms, images, None, f'Sigma^{k} {self.name}'.strip())


def _element_in(module: FiniteModule, text: str) -> np.ndarray:
    if isinstance(module, PresentedModule):
        return module.element(text)
    names = [n.strip() for n in text.split('+') if n.strip() and n.strip() != '0']
    return module.vector(*names)


def _resolve_target(reference: str, algebra: str) -> FiniteModule:
    from gmod.formats import load_module
    from gmod.library import paper_module
    try:
        return paper_module(reference, algebra)
    except UnknownModuleError:
        return load_module(reference)


def parse_complex(text: str, name: str = '') -> ModuleComplex:
    algebra = None
    target_name = None
    gens: Dict[int, List[Tuple[str, int]]] = {}
    rels: Dict[int, List[str]] = {}
    diffs: Dict[int, List[Tuple[str, str, int]]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(' ')
        rest = rest.strip()
        try:
            if keyword == 'algebra':
                algebra = normalize_tag(rest)
            elif keyword == 'name':
                name = rest
            elif keyword == 'resolves':
                target_name = rest
            elif keyword == 'gen':
                s, _, items = rest.partition(' ')
                for item in items.split():
                    label, _, degree = item.rpartition(':')
                    if not label:
                        raise ModuleDefinitionError(f"Generator '{item}' is not name:degree")
                    gens.setdefault(int(s), []).append((label, int(degree)))
            elif keyword == 'rel':
                s, _, element = rest.partition(' ')
                rels.setdefault(int(s), []).append(element.strip())
            elif keyword == 'd':
                s, _, body = rest.partition(' ')
                head, sep, element = body.partition('=')
                if not sep:
                    raise ModuleDefinitionError("Missing '='")
                diffs.setdefault(int(s), []).append((head.strip(), element.strip(), number))
            else:
                raise ModuleDefinitionError(f"Unknown keyword '{keyword}'")
        except (ValueError, Ext2Error) as e:
            raise ModuleDefinitionError(f'Line {number}: {e}') from e
    if algebra is None:
        raise ModuleDefinitionError('Missing algebra line')
    length = max(gens) + 1 if gens else 0
    if any(s not in gens for s in range(length)):
        raise ModuleDefinitionError('Every homological degree up to the top needs generators')
    terms = [present(algebra, gens[s], rels.get(s, []), name=f'C{s}') for s in range(length)]
    target = _resolve_target(target_name, algebra) if target_name else None
    images: List[Dict[str, np.ndarray]] = [dict() for _ in range(length)]
    for s, entries in diffs.items():
        if s >= length or (s == 0 and target is None):
            raise ModuleDefinitionError(f'Differential d{s} has no codomain')
        codomain = target if s == 0 else terms[s - 1]
        for generator, element, number in entries:
            if generator not in terms[s].generator_index:
                raise ModuleDefinitionError(f"Line {number}: unknown generator '{generator}' of C{s}")
            try:
                images[s][generator] = _element_in(codomain, element)
            except Ext2Error as e:
                raise ModuleDefinitionError(f'Line {number}: {e}') from e
    logger.debug('Parsed complex %s with %d terms', name, length)
    return ModuleComplex(algebra, terms, images, target, name)


def load_complex(path: Union[str, Path]) -> ModuleComplex:
    from gmod.formats import resolve_path
    path = resolve_path(path)
    return parse_complex(path.read_text(), name=path.stem)


# ---------- verification

def _dd_failures(c: ModuleComplex, s: int, t_max: int) -> List[dict]:
    upper, lower = c.differential(s), c.differential(s - 1)
    composite = gf2_matmul(lower.matrix, upper.matrix)
    failures = []
    for col in np.flatnonzero(composite.any(axis=0)):
        degree = c.terms[s].degrees[col]
        if degree <= t_max:
            failures.append({'kind': 'dd', 'position': s, 'degree': degree,
                             'element': c.terms[s].names[col]})
    return failures


def _homology(c: ModuleComplex, s: int, t: int) -> int:
    """dim ker d_s - dim im d_{s+1} in degree t, with C_{-1} = M"""
    term = c.terms[s]
    below = c.differential(s).block(t) if (s > 0 or c.target is not None) else np.zeros((0, term.dim(t)))
    cycles = term.dim(t) - rank(below)
    above = c.differential(s + 1).block(t) if s + 1 < len(c) else np.zeros((term.dim(t), 0))
    return cycles - rank(above)


def verify_complex(c: ModuleComplex, t_max: int, t_min: Optional[int] = None, search: bool = True) -> dict:
    """d o d = 0 and exactness degreewise through t_max; never raises on bad data.

    Exactness is checked at M (surjectivity of the augmentation) and at C_0 ... C_{n-1}.
    When the complex fails, single-term corrections of one differential are searched and
    a correction that repairs everything is reported as an erratum candidate.
    """
    failures: List[dict] = []
    degrees = set()
    for s, term in enumerate(c.terms):
        degrees.update(term.dims)
    if c.target is not None:
        degrees.update(c.target.dims)
    if t_min is None:
        t_min = min(degrees) if degrees else 0
    window = [t for t in range(t_min, t_max + 1)]
    first = 0 if c.target is not None else 1
    broken = set()
    for s in range(first, len(c)):
        try:
            c.differential(s)
        except ModuleDefinitionError as e:
            failures.append({'kind': 'well_defined', 'position': s, 'message': str(e)})
            broken.add(s)
    for s in range(max(first, 1), len(c)):
        if s in broken or (s - 1) in broken or (s == 1 and c.target is None):
            continue
        failures.extend(_dd_failures(c, s, t_max))
    dd_zero = not any(f['kind'] == 'dd' for f in failures)

    bad_degrees = {f['degree'] for f in failures if 'degree' in f}
    for t in window:
        if c.target is not None and 0 not in broken and c.target.dim(t):
            if rank(c.differential(0).block(t)) != c.target.dim(t):
                failures.append({'kind': 'homology', 'position': -1, 'degree': t,
                                 'dimension': c.target.dim(t) - rank(c.differential(0).block(t))})
                bad_degrees.add(t)
        for s in range(len(c) - 1):
            if {s, s + 1} & broken or not c.terms[s].dim(t):
                continue
            h = _homology(c, s, t)
            if h:
                failures.append({'kind': 'homology', 'position': s, 'degree': t, 'dimension': h})
                bad_degrees.add(t)
    exact_degrees = [t for t in window if t not in bad_degrees]
    report = {
        'valid': not failures,
        'dd_zero': dd_zero,
        'exact_degrees': exact_degrees,
        'exact_through': _exact_through(window, bad_degrees),
        'failures': failures,
        'erratum_candidate': None,
    }
    if failures and search and not broken:
        candidate = erratum_search(c, t_max, t_min, failures)
        if candidate is not None:
            logger.warning('ERRATUM-CANDIDATE in %s: %s', c.name or 'complex', candidate['correction'])
        report['erratum_candidate'] = candidate
    logger.info('Verified %s through degree %d: %s', c.name or 'complex', t_max,
                'exact' if report['valid'] else f'{len(failures)} failures')
    return report


def _exact_through(window: Sequence[int], bad: set) -> Optional[int]:
    last = None
    for t in window:
        if t in bad:
            break
        last = t
    return last


def _milnor_label(r) -> str:
    return 'Sq(' + ','.join(str(x) for x in r) + ')' if r else '1'


def erratum_search(c: ModuleComplex, t_max: int, t_min: int, failures: List[dict]) -> Optional[dict]:
    """First single-term toggle of a differential that makes the complex pass.

    Only the differentials at and next to the lowest failing position are searched.
    """
    positions = [f['position'] for f in failures if 'position' in f]
    low = max(min(positions), 0)
    first = 0 if c.target is not None else 1
    candidates = sorted({p for p in (low - 1, low, low + 1, low + 2) if first <= p < len(c)})
    tables = c.terms[0].tables
    for s in candidates:
        codomain = c.codomain(s)
        if not isinstance(codomain, PresentedModule):
            continue
        for generator, degree in c.generators(s):
            for target, target_degree in codomain.cover_generators:
                gap = degree - target_degree
                for j in tables.by_degree.get(gap, []):
                    theta = MilnorElement(c.algebra, frozenset([tables.basis[j]]), gap)
                    toggle = codomain.element([(theta, target)])
                    if not toggle.any():
                        continue
                    current = c.images[s].get(generator, np.zeros(len(codomain), dtype=np.uint8))
                    trial = c.with_image(s, generator, current ^ toggle)
                    report = verify_complex(trial, t_max, t_min, search=False)
                    if report['valid']:
                        return {
                            'position': s,
                            'generator': generator,
                            'term': f'{_milnor_label(tables.basis[j])} {target}',
                            'correction': f'toggle {_milnor_label(tables.basis[j])} {target} in d{s}({generator})',
                        }
    return None


# ---------- chain maps between complexes

def _step_system(source: PresentedModule, source_d: ModuleMap, previous: ModuleMap, target: PresentedModule,
                 target_d: ModuleMap):
    """Linear system for the images of the cover generators of `source` in `target`"""
    slots = list(source.cover_generators)
    unknowns = [(k, target.offsets.get(d, 0) + i) for k, (_, d) in enumerate(slots) for i in range(target.dim(d))]
    blocks = [len(target_d.target)] * len(slots) + [len(target)] * len(source.relations)
    size = sum(blocks)
    rows = np.zeros((len(unknowns), size), dtype=np.uint8)
    for u, (k, index) in enumerate(unknowns):
        e = np.zeros(len(target), dtype=np.uint8)
        e[index] = 1
        offset = k * len(target_d.target)
        rows[u, offset:offset + len(target_d.target)] = target_d.apply(e)
        base = len(slots) * len(target_d.target)
        for r, relation in enumerate(source.relations):
            part = np.zeros(len(target), dtype=np.uint8)
            for coefficient, generator in relation:
                if generator == slots[k][0]:
                    part ^= target.act(coefficient, e)
            start = base + r * len(target)
            rows[u, start:start + len(target)] ^= part
    rhs = np.zeros(size, dtype=np.uint8)
    for k, (generator, _) in enumerate(slots):
        image = previous.apply(source_d.apply(source.generator_vector(generator)))
        offset = k * len(target_d.target)
        rhs[offset:offset + len(target_d.target)] = image
    return slots, unknowns, rows, rhs


def lift_step(source: PresentedModule, source_d: ModuleMap, previous: ModuleMap, target: PresentedModule,
              target_d: ModuleMap) -> Optional[Dict[str, np.ndarray]]:
    """Images f(g) in `target` with target_d(f(g)) = previous(source_d(g)) that kill the relations of `source`.

    `previous` maps the codomain of source_d to the codomain of target_d; all maps preserve
    degree (suspend the target terms to absorb a shift). Returns None when no lift exists.
    """
    slots, unknowns, rows, rhs = _step_system(source, source_d, previous, target, target_d)
    x = Solver(rows).solve(rhs)
    if x is None:
        return None
    images = {generator: np.zeros(len(target), dtype=np.uint8) for generator, _ in slots}
    for u, (k, index) in enumerate(unknowns):
        if x[u]:
            images[slots[k][0]][index] ^= 1
    return images


def check_step(source: PresentedModule, source_d: ModuleMap, previous: ModuleMap, target_d: ModuleMap,
               images: Dict[str, np.ndarray]) -> bool:
    """Whether the given generator images commute with the differentials"""
    try:
        f = map_from_generators(source, target_d.source, images)
    except ModuleDefinitionError:
        return False
    return np.array_equal(gf2_matmul(target_d.matrix, f.matrix), gf2_matmul(previous.matrix, source_d.matrix))
