"""
Standard Ext_{A(1)} patterns: bo_* and bsp_*, both periodic under (stem, filtration) -> (stem + 8, s + 4)
"""

from typing import Dict, List, Optional, Sequence, Tuple

from resolve.extchart import Edge, ExtChart, Window

Point = Tuple[int, int, int]

# (stem, first filtration, carries h1 hooks) for one period
BO_PERIOD = ((0, 0, True), (4, 3, False))
BSP_PERIOD = ((0, 0, False), (4, 1, True))


def pattern_window(stem_max: int, s_max: int) -> Window:
    return Window(s_max, stem_max + s_max, stem_max)


class PatternBuilder:
    """Accumulates classes at (stem, filtration) with their product edges"""

    def __init__(self, window: Window, algebra: str = 'A1', module: str = ''):
        self.window = window
        self.algebra = algebra
        self.module = module
        self.counts: Dict[Tuple[int, int], int] = {}
        self.edges: List[Edge] = []

    @property
    def s_max(self) -> int:
        return self.window.s_max

    @property
    def stem_max(self) -> int:
        if self.window.stem_max is not None:
            return self.window.stem_max
        return self.window.t_max

    def add(self, stem: int, s: int) -> Optional[Point]:
        t = stem + s
        if s < 0 or not self.window.contains(s, t):
            return None
        index = self.counts.get((s, t), 0)
        self.counts[(s, t)] = index + 1
        return s, t, index

    def edge(self, kind: str, source: Optional[Point], target: Optional[Point]) -> None:
        if source is not None and target is not None:
            self.edges.append(Edge(kind, source, target))

    def periodic(self, period: Sequence[Tuple[int, int, bool]], stem0: int, s0: int,
                 drop_bottom: bool = False) -> None:
        """One copy of a bo-like pattern with bottom class at (stem0, s0)"""
        k = 0
        while stem0 + 8 * k <= self.stem_max and s0 + 4 * k <= self.s_max:
            for x, start, hooks in period:
                stem, first = stem0 + 8 * k + x, s0 + 4 * k + start
                removed = drop_bottom and k == 0 and x == 0
                bottom = below = None
                for s in range(max(first, 0), self.s_max + 1):
                    if removed and s == first:
                        continue
                    point = self.add(stem, s)
                    if point is None:
                        break
                    self.edge('h0', below, point)
                    bottom = bottom or point
                    below = point
                if hooks:
                    one = self.add(stem + 1, first + 1)
                    two = self.add(stem + 2, first + 2)
                    if not removed:
                        self.edge('h1', bottom, one)
                    self.edge('h1', one, two)
            k += 1

    def chart(self) -> ExtChart:
        chart = ExtChart(self.algebra, self.module, self.window, dict(self.counts))
        chart.edges = sorted(self.edges, key=lambda e: (e.kind, e.source, e.target))
        return chart


def bo_pattern(stem_max: int, s_max: int, drop_bottom: bool = False) -> ExtChart:
    """Ext_{A(1)}(F2): towers in stems 8k (from 4k) and 8k+4 (from 4k+3), h1 hooks on the 8k towers"""
    b = PatternBuilder(pattern_window(stem_max, s_max), module='bo')
    b.periodic(BO_PERIOD, 0, 0, drop_bottom=drop_bottom)
    return b.chart()


def bsp_pattern(stem_max: int, s_max: int) -> ExtChart:
    """bo_* from stem 4 on, moved down to the origin: towers in 8k (from 4k) and 8k+4 (from 4k+1, hooked)"""
    b = PatternBuilder(pattern_window(stem_max, s_max), module='bsp')
    b.periodic(BSP_PERIOD, 0, 0)
    return b.chart()


def point_pattern(stem_max: int, s_max: int) -> ExtChart:
    """Ext of a free module: F2 in (0, 0)"""
    b = PatternBuilder(pattern_window(stem_max, s_max), module='F2')
    b.add(0, 0)
    return b.chart()


PATTERNS = {
    'bo': bo_pattern,
    'bsp': bsp_pattern,
    'point': point_pattern,
    'bo_reduced': lambda stem_max, s_max: bo_pattern(stem_max, s_max, drop_bottom=True),
}
