"""
Chart rendering: ASCII grids, SVG pictures and JSON
"""

import logging
from typing import List, Optional

from resolve.extchart import ExtChart
from resolve.serializers import chart_to_json
from .charts import AnyChart, as_chart, grid
from .exceptions import ChartError

logger = logging.getLogger(__name__)

FORMATS = ('ascii', 'svg', 'json')

UNIT = 24
EDGE_STYLES = {
    'h0': 'stroke="black" stroke-width="1.5"',
    'h1': 'stroke="black" stroke-width="1"',
    'h2': 'stroke="black" stroke-width="1" stroke-dasharray="2,2"',
}


def _symbol(n: int) -> str:
    if n <= 0:
        return '.'
    if n == 1:
        return 'o'
    return str(n) if n < 10 else '+'


def render_ascii(chart: AnyChart, width: Optional[int] = None) -> str:
    """Filtration rows over stem columns, wrapped into bands of `width` stems"""
    chart = as_chart(chart)
    table = grid(chart)
    stems = list(table.columns)
    width = width or max(len(stems), 1)
    lines = [f'Ext over {chart.algebra} of {chart.module or "?"}  (window s <= {chart.window.s_max}, '
             f't <= {chart.window.t_max})']
    for start in range(0, max(len(stems), 1), width):
        band = stems[start:start + width]
        lines.append('')
        for s in table.index:
            lines.append(f'{s:>3} | ' + ' '.join(_symbol(int(table.at[s, x])) for x in band).rstrip())
        lines.append('    +' + '-' * (2 * len(band) + 1))
        labels = [' '] * (2 * len(band) + 1)
        for k, x in enumerate(band):
            if x % 4 == 0:
                text = str(x)
                for j, ch in enumerate(text):
                    if 1 + 2 * k + j < len(labels):
                        labels[1 + 2 * k + j] = ch
        lines.append('     ' + ''.join(labels).rstrip())
    return '\n'.join(lines) + '\n'


def _place(chart: ExtChart, s: int, t: int, i: int, height: int):
    n = chart.dim(s, t)
    x = (t - s + 1) * UNIT + (i - (n - 1) / 2) * 5
    y = height - (s + 1) * UNIT
    return x, y


def render_svg(chart: AnyChart) -> str:
    """(stem, filtration) axes; dots for classes, lines for products, dashed arcs for differentials"""
    chart = as_chart(chart)
    stem_max = chart.window.stem_max if chart.window.stem_max is not None else chart.window.t_max
    width, height = (stem_max + 2) * UNIT, (chart.window.s_max + 2) * UNIT
    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f'<title>Ext over {chart.algebra} of {chart.module}</title>',
        f'<line x1="{UNIT // 2}" y1="{height - UNIT // 2}" x2="{width}" y2="{height - UNIT // 2}" stroke="gray"/>',
        f'<line x1="{UNIT // 2}" y1="0" x2="{UNIT // 2}" y2="{height - UNIT // 2}" stroke="gray"/>',
    ]
    for x in range(0, stem_max + 1, 4):
        out.append(f'<text x="{(x + 1) * UNIT}" y="{height - 2}" font-size="9" text-anchor="middle">{x}</text>')
    for s in range(0, chart.window.s_max + 1, 4):
        out.append(f'<text x="2" y="{height - (s + 1) * UNIT + 3}" font-size="9">{s}</text>')
    for e in chart.edges:
        x1, y1 = _place(chart, *e.source, height)
        x2, y2 = _place(chart, *e.target, height)
        out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" {EDGE_STYLES[e.kind]}/>')
    for (s, t), n in chart.dims.items():
        if t - s < 0 or t - s > stem_max:
            continue
        for i in range(n):
            x, y = _place(chart, s, t, i, height)
            out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="2.5" fill="black"/>')
    for a in chart.annotations:
        if a.get('kind') != 'differential':
            continue
        (x1, s1), (x2, s2) = a['source'], a['target']
        p1 = ((x1 + 1) * UNIT, height - (s1 + 1) * UNIT)
        p2 = ((x2 + 1) * UNIT, height - (s2 + 1) * UNIT)
        control = ((p1[0] + p2[0]) / 2 + UNIT / 2, (p1[1] + p2[1]) / 2)
        out.append(f'<path d="M {p1[0]:.1f} {p1[1]:.1f} Q {control[0]:.1f} {control[1]:.1f} '
                   f'{p2[0]:.1f} {p2[1]:.1f}" fill="none" stroke="black" stroke-dasharray="4,3"/>')
    out.append('</svg>')
    return '\n'.join(out) + '\n'


def render(chart: AnyChart, fmt: str = 'json', width: Optional[int] = None) -> str:
    if fmt == 'ascii':
        return render_ascii(chart, width)
    if fmt == 'svg':
        return render_svg(chart)
    if fmt == 'json':
        return chart_to_json(as_chart(chart))
    raise ChartError(f"Unknown chart format '{fmt}'; expected one of {', '.join(FORMATS)}")
