"""
Charts assembled from shifted pieces, with recorded differentials and extensions
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from resolve.extchart import Edge, ExtChart, Window
from .closed_forms import periodic_terms
from .exceptions import ChartError, FactError
from .patterns import PATTERNS, pattern_window

logger = logging.getLogger(__name__)

Position = Tuple[int, int]  # (stem, filtration)

EXTENSION_STEMS = {'2': 0, 'eta': 1, 'nu': 3}


@dataclass(frozen=True)
class Piece:
    chart: ExtChart
    stem: int = 0
    filtration: int = 0
    label: str = ''

    def moved(self) -> ExtChart:
        return self.chart.shifted(self.stem, self.filtration)


@dataclass(frozen=True)
class Differential:
    """d_r from (x, s) to (x - 1, s + r)"""
    r: int
    source: Position
    target: Position
    provenance: str

    def annotation(self) -> dict:
        return {'kind': 'differential', 'r': self.r, 'source': list(self.source),
                'target': list(self.target), 'provenance': self.provenance}


@dataclass(frozen=True)
class Extension:
    """A hidden multiplication by 2, eta or nu from a class to one of higher filtration"""
    operation: str
    source: Position
    target: Position
    provenance: str

    def annotation(self) -> dict:
        return {'kind': 'extension', 'operation': self.operation, 'source': list(self.source),
                'target': list(self.target), 'provenance': self.provenance}


Fact = Union[Differential, Extension]


@dataclass
class AssembledChart:
    pieces: List[Piece]
    window: Window
    differentials: List[Differential] = field(default_factory=list)
    extensions: List[Extension] = field(default_factory=list)
    algebra: str = ''
    module: str = ''

    def _sum(self) -> Tuple[Dict[Tuple[int, int], int], List[Edge]]:
        dims: Dict[Tuple[int, int], int] = {}
        edges: List[Edge] = []
        for piece in self.pieces:
            moved = piece.moved()
            offsets = dict(dims)

            def place(point):
                s, t, i = point
                return s, t, i + offsets.get((s, t), 0)

            for cell, n in moved.dims.items():
                if self.window.contains(*cell):
                    dims[cell] = dims.get(cell, 0) + n
            for e in moved.edges:
                if self.window.contains(*e.source[:2]) and self.window.contains(*e.target[:2]):
                    edges.append(Edge(e.kind, place(e.source), place(e.target)))
        return dims, edges

    def dim(self, stem: int, s: int) -> int:
        return self.chart().at_stem(stem, s)

    def chart(self) -> ExtChart:
        """Sum of the pieces minus both endpoints of every differential"""
        dims, edges = self._sum()
        touched = set()
        for d in self.differentials:
            for stem, s in (d.source, d.target):
                cell = (s, stem + s)
                dims[cell] = dims.get(cell, 0) - 1
                touched.add(cell)
        edges = [e for e in edges if e.source[:2] not in touched and e.target[:2] not in touched]
        chart = ExtChart(self.algebra, self.module, self.window, dims)
        chart.edges = sorted(edges, key=lambda e: (e.kind, e.source, e.target))
        for fact in [*self.differentials, *self.extensions]:
            chart.annotations.append(fact.annotation())
        return chart

    def total(self) -> int:
        return self.chart().total()


def assemble(pieces: Iterable[Piece], window: Optional[Window] = None, algebra: str = '',
             module: str = '') -> AssembledChart:
    pieces = list(pieces)
    if not pieces and window is None:
        raise ChartError('Nothing to assemble and no window given')
    common = window
    for piece in pieces:
        moved = piece.chart.window.shifted(piece.stem, piece.filtration)
        common = moved if common is None else common.intersect(moved)
    algebra = algebra or (pieces[0].chart.algebra if pieces else '')
    logger.debug('Assembled %d pieces in window %s', len(pieces), common.to_dict())
    return AssembledChart(pieces, common, algebra=algebra, module=module)


def _present(chart: AssembledChart, position: Position, what: str) -> None:
    stem, s = position
    if chart.dim(stem, s) <= 0:
        raise FactError(f'{what} at (stem {stem}, filtration {s}) has no class to act on')


def apply_fact(chart: Union[AssembledChart, ExtChart], fact: Fact) -> AssembledChart:
    """Record a differential (which kills both endpoints) or an extension (which changes no dimension)"""
    if isinstance(chart, ExtChart):
        chart = AssembledChart([Piece(chart)], chart.window, algebra=chart.algebra, module=chart.module)
    if isinstance(fact, Differential):
        (x, s), (x2, s2) = fact.source, fact.target
        if fact.r < 1 or (x2, s2) != (x - 1, s + fact.r):
            raise FactError(f'd_{fact.r} cannot go from {fact.source} to {fact.target}')
        _present(chart, fact.source, f'd_{fact.r} source')
        _present(chart, fact.target, f'd_{fact.r} target')
        result = AssembledChart(list(chart.pieces), chart.window, [*chart.differentials, fact],
                                list(chart.extensions), chart.algebra, chart.module)
    elif isinstance(fact, Extension):
        step = EXTENSION_STEMS.get(fact.operation)
        if step is None:
            raise FactError(f"Unknown extension '{fact.operation}'")
        (x, s), (x2, s2) = fact.source, fact.target
        if x2 != x + step or s2 <= s:
            raise FactError(f'{fact.operation}-extension cannot go from {fact.source} to {fact.target}')
        _present(chart, fact.source, 'Extension source')
        _present(chart, fact.target, 'Extension target')
        result = AssembledChart(list(chart.pieces), chart.window, list(chart.differentials),
                                [*chart.extensions, fact], chart.algebra, chart.module)
    else:
        raise FactError(f'Not a chart fact: {fact!r}')
    logger.debug('Applied %r', fact)
    return result


# Ext of each summand type of the periodic resolution, as (pattern, stem, filtration)
SUMMAND_PIECES: Dict[str, Tuple[Tuple[str, int, int], ...]] = {
    'free': (('point', 0, 0),),
    'A2//A1': (('bo', 0, 0),),
    'A2/(Sq1,Sq5)': (('bsp', 0, 0),),
    'A2/(Sq3)': (('point', 0, 0), ('bsp', 2, 1)),
    'glued': (('bo_reduced', 0, -1),),
}


def phi_assembly(stem_max: int, s_max: int, terms: Optional[Sequence[Tuple[int, int, str]]] = None) -> AssembledChart:
    """Sum over i of Ext(Sigma^-i C_i) raised i filtrations, for the terms (i, suspension, kind)"""
    if terms is None:
        terms = periodic_terms(s_max + 2)
    window = pattern_window(stem_max, s_max)
    pieces = []
    for position, suspension, kind in terms:
        for pattern, stem, filtration in SUMMAND_PIECES[kind]:
            x, f = suspension - position + stem, position + filtration
            if x > stem_max or f > s_max:
                continue
            chart = PATTERNS[pattern](stem_max - x, s_max - f)
            pieces.append(Piece(chart, x, f, f'C{position}: Sigma^{suspension} {kind}'))
    return assemble(pieces, window, algebra='A2', module='L')
