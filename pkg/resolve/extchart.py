"""
Ext charts: dimensions of Ext^{s,t} in a window, with h_0, h_1, h_2 product edges
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Tuple

from .exceptions import NonMinimalError

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
HOPF_KINDS = {0: 'h0', 1: 'h1', 2: 'h2'}


@dataclass(frozen=True)
class Window:
    """Region s <= s_max, t <= t_max (and t - s <= stem_max when set) where a chart is complete"""
    s_max: int
    t_max: int
    stem_max: Optional[int] = None

    def contains(self, s: int, t: int) -> bool:
        if s > self.s_max or t > self.t_max:
            return False
        return self.stem_max is None or t - s <= self.stem_max

    def shifted(self, stem: int, filtration: int) -> 'Window':
        return Window(self.s_max + filtration, self.t_max + stem + filtration,
                      None if self.stem_max is None else self.stem_max + stem)

    def intersect(self, other: 'Window') -> 'Window':
        stems = [w.stem_max for w in (self, other) if w.stem_max is not None]
        return Window(min(self.s_max, other.s_max), min(self.t_max, other.t_max),
                      min(stems) if stems else None)

    def to_dict(self) -> dict:
        return {'s_max': self.s_max, 't_max': self.t_max, 'stem_max': self.stem_max}


@dataclass(frozen=True)
class Edge:
    """Product edge between generator classes; source and target are (s, t, index)"""
    kind: str
    source: Tuple[int, int, int]
    target: Tuple[int, int, int]


@dataclass
class ExtChart:
    algebra: str
    module: str
    window: Window
    dims: Dict[Cell, int] = field(default_factory=dict)
    edges: List[Edge] = field(default_factory=list)
    annotations: List[dict] = field(default_factory=list)

    def __post_init__(self):
        self.dims = {(int(s), int(t)): int(n) for (s, t), n in sorted(self.dims.items()) if n}

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def at_stem(self, stem: int, s: int) -> int:
        return self.dims.get((s, stem + s), 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def cells(self) -> List[Cell]:
        return list(self.dims)

    def stems(self) -> Dict[Tuple[int, int], int]:
        """Dimensions keyed by (stem, filtration)"""
        return {(t - s, s): n for (s, t), n in self.dims.items()}

    def edges_of(self, kind: str) -> List[Edge]:
        return [e for e in self.edges if e.kind == kind]

    def shifted(self, stem: int = 0, filtration: int = 0, module: Optional[str] = None) -> 'ExtChart':
        """Move every class from (x, s) to (x + stem, s + filtration)"""
        dt = stem + filtration

        def move(point):
            s, t, i = point
            return s + filtration, t + dt, i

        return ExtChart(
            self.algebra,
            module if module is not None else self.module,
            self.window.shifted(stem, filtration),
            {(s + filtration, t + dt): n for (s, t), n in self.dims.items()},
            [Edge(e.kind, move(e.source), move(e.target)) for e in self.edges],
            [dict(a) for a in self.annotations],
        )

    def restricted(self, window: Window) -> 'ExtChart':
        window = self.window.intersect(window)
        return ExtChart(
            self.algebra, self.module, window,
            {c: n for c, n in self.dims.items() if window.contains(*c)},
            [e for e in self.edges if window.contains(*e.source[:2]) and window.contains(*e.target[:2])],
            [dict(a) for a in self.annotations],
        )

    def with_dims(self, dims: Dict[Cell, int]) -> 'ExtChart':
        return replace(self, dims=dict(dims), edges=[], annotations=[dict(a) for a in self.annotations])

    def annotate(self, kind: str, provenance: str, **data) -> 'ExtChart':
        self.annotations.append({'kind': kind, 'provenance': provenance, **data})
        return self


def ext_chart(r) -> ExtChart:
    """Chart of a computed minimal resolution.

    For y in F_{s+1}, the coefficient of Sq^{2^i} g in d(y) is the h_i-product coefficient
    from the class dual to g to the class dual to y.
    """
    r.compute()
    tables = r.tables
    chart = ExtChart(r.algebra, r.name, Window(r.s_max, r.t_max), r.dims())
    for s in range(len(r.free) - 1):
        lower, upper = r.free[s], r.free[s + 1]
        for i, kind in HOPF_KINDS.items():
            j = tables.index.get((2 ** i,))
            if j is None:
                continue
            for y, (_, ty) in enumerate(upper.generators):
                t = ty - 2 ** i
                image = r.image(s + 1, y)
                if any(lower.unit_coefficient(image, ty, b) for b in lower.generators_in(ty)):
                    raise NonMinimalError(f'd({upper.generators[y][0]}) has a unit coefficient')
                index = lower.index(ty)
                for b in lower.generators_in(t):
                    position = index.get((b, j))
                    if position is not None and image[position]:
                        chart.edges.append(Edge(
                            kind,
                            (s, t, _position(r, s, b)),
                            (s + 1, ty, _position(r, s + 1, y)),
                        ))
    chart.edges.sort(key=lambda e: (e.kind, e.source, e.target))
    return chart


def _position(r, s: int, a: int) -> int:
    """Index of a generator among the generators of F_s in its degree"""
    t = r.free[s].degree(a)
    return r.generators_in(s, t).index(a)


def tower_starts(chart: ExtChart, stem: int, top: Optional[int] = None) -> List[int]:
    """Filtrations where an h_0-tower (a chain of h_0 edges reaching `top`) starts in a stem"""
    if top is None:
        top = min(chart.window.s_max, chart.window.t_max - stem)
    h0 = {(e.source[0], e.source[1]): e for e in chart.edges_of('h0') if e.source[1] - e.source[0] == stem}
    incoming = {(e.target[0], e.target[1]) for e in chart.edges_of('h0') if e.target[1] - e.target[0] == stem}
    starts = []
    for s in range(top + 1):
        t = stem + s
        if not chart.dim(s, t) or (s, t) in incoming:
            continue
        cell = (s, t)
        while cell in h0 and cell[0] < top:
            cell = (cell[0] + 1, cell[1] + 1)
        if cell[0] >= top:
            starts.append(s)
    return starts


def dims_from_cells(cells: Iterable[Tuple[int, int, int]]) -> Dict[Cell, int]:
    return {(s, t): n for s, t, n in cells if n}
