"""
Chart comparison, shifting and tabular views
"""

import json
import logging
from typing import Optional, Union

import pandas as pd

from resolve.extchart import ExtChart, Window
from .assembly import AssembledChart
from .exceptions import ChartError

logger = logging.getLogger(__name__)

AnyChart = Union[ExtChart, AssembledChart]


def as_chart(chart: AnyChart) -> ExtChart:
    return chart.chart() if isinstance(chart, AssembledChart) else chart


def shifted(chart: AnyChart, stem: int = 0, filtration: int = 0, module: Optional[str] = None) -> ExtChart:
    return as_chart(chart).shifted(stem, filtration, module)


def compare(a: AnyChart, b: AnyChart, window: Optional[Window] = None) -> dict:
    """Every cell of the common window where the dimensions differ"""
    a, b = as_chart(a), as_chart(b)
    common = a.window.intersect(b.window)
    if window is not None:
        common = common.intersect(window)
    cells = sorted(c for c in set(a.dims) | set(b.dims) if common.contains(*c))
    diffs = []
    for s, t in cells:
        left, right = a.dim(s, t), b.dim(s, t)
        if left != right:
            diffs.append({'s': s, 't': t, 'stem': t - s, 'left': left, 'right': right})
    if diffs:
        logger.info('Charts %s and %s differ in %d cells', a.module or '?', b.module or '?', len(diffs))
    return {
        'equal': not diffs,
        'window': common.to_dict(),
        'cells_compared': len(cells),
        'diffs': diffs,
    }


def to_frame(chart: AnyChart) -> pd.DataFrame:
    """One row per nonzero cell: stem, s, t, dim"""
    chart = as_chart(chart)
    rows = [{'stem': t - s, 's': s, 't': t, 'dim': n} for (s, t), n in chart.dims.items()]
    frame = pd.DataFrame(rows, columns=['stem', 's', 't', 'dim'])
    return frame.sort_values(['stem', 's']).reset_index(drop=True)


def grid(chart: AnyChart) -> pd.DataFrame:
    """Dimensions with filtration rows (top first) and stem columns, zero-filled over the window"""
    chart = as_chart(chart)
    stem_max = chart.window.stem_max if chart.window.stem_max is not None else chart.window.t_max
    frame = to_frame(chart)
    frame = frame[(frame['stem'] >= 0) & (frame['stem'] <= stem_max)]
    rows, columns = range(chart.window.s_max, -1, -1), range(stem_max + 1)
    if frame.empty:
        return pd.DataFrame(0, index=rows, columns=columns)
    table = frame.pivot_table(index='s', columns='stem', values='dim', aggfunc='sum', fill_value=0)
    return table.reindex(index=rows, columns=columns, fill_value=0).astype(int)


def parse_chart(text: Union[str, dict]) -> ExtChart:
    from .serializers import ChartSerializer
    try:
        data = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as e:
        raise ChartError(f'Chart is not JSON: {e}') from e
    serializer = ChartSerializer(data=data)
    if not serializer.is_valid():
        raise ChartError(f'Invalid chart: {serializer.errors}')
    return serializer.save()
