"""
Closed-form Ext charts built from the bo_* and bsp_* patterns
"""

from typing import List, Sequence, Tuple

from resolve.extchart import ExtChart
from .patterns import BO_PERIOD, BSP_PERIOD, PatternBuilder, pattern_window

V2_4 = (24, 4)
V2_8 = (48, 8)

# Z2[v2^8]-free classes of Ext_{A(2)}(A2/(Sq4, Sq5Sq1)), as (stem, filtration)
L_SINGLES = ((0, 0), (3, 1), (14, 2), (15, 3), (17, 3), (31, 5), (34, 6), (39, 7))
L_SINGLE_EDGES = (('h2', 0, 1), ('h1', 2, 3), ('h2', 2, 4), ('h2', 5, 6))
# bo_*[v2^4] and bsp_*[v2^4] generators; the bo_* at (21, 3) loses its bottom class every v2^8
L_BO = ((5, 1), (21, 3))
L_BSP = ((9, 2), (17, 4))

# Summands of the eight terms C_0 ... C_7 of the periodic resolution of L, as
# (position, suspension, Ext pattern); C_{i+8} is the 56-fold suspension of C_i
THM24_TERMS: Tuple[Tuple[int, int, str], ...] = (
    (0, 0, 'free'),
    (1, 4, 'free'), (1, 6, 'A2//A1'),
    (2, 11, 'A2/(Sq1,Sq5)'), (2, 16, 'free'),
    (3, 18, 'A2/(Sq3)'), (3, 20, 'free'),
    (4, 25, 'glued'),
    (5, 34, 'A2//A1'), (5, 36, 'A2/(Sq3)'),
    (6, 40, 'free'),
    (7, 46, 'A2/(Sq3)'), (7, 52, 'A2//A1'),
)


def _repeats(origin: Tuple[int, int], step: Tuple[int, int], stem_max: int, s_max: int) -> List[Tuple[int, int, int]]:
    found, k = [], 0
    while origin[0] + k * step[0] <= stem_max and origin[1] + k * step[1] <= s_max:
        found.append((k, origin[0] + k * step[0], origin[1] + k * step[1]))
        k += 1
    return found


def closed_form_thm24(stem_max: int, s_max: int, omit: Sequence[Tuple[int, int]] = ()) -> ExtChart:
    """Ext_{A(2)}(L) from the generator list: Z2[v2^8] classes plus bo_* and bsp_* families.

    `omit` names generators (stem, filtration) of the first period to leave out, together
    with the bo_* or bsp_* family starting there.
    """
    omitted = set(omit)
    b = PatternBuilder(pattern_window(stem_max, s_max), algebra='A2', module='L')
    k = 0
    while k * V2_8[0] <= stem_max:
        points = [None if k == 0 and (x, s) in omitted else b.add(x + k * V2_8[0], s + k * V2_8[1])
                  for x, s in L_SINGLES]
        for kind, i, j in L_SINGLE_EDGES:
            b.edge(kind, points[i], points[j])
        k += 1
    for first, origin in enumerate(L_BO):
        for j, stem, s in _repeats(origin, V2_4, stem_max, s_max):
            if j == 0 and origin in omitted:
                continue
            b.periodic(BO_PERIOD, stem, s, drop_bottom=(first == 1 and j % 2 == 0))
    for origin in L_BSP:
        for j, stem, s in _repeats(origin, V2_4, stem_max, s_max):
            if j == 0 and origin in omitted:
                continue
            b.periodic(BSP_PERIOD, stem, s)
    return b.chart()


def periodic_terms(length: int) -> List[Tuple[int, int, str]]:
    """THM24_TERMS continued through position `length - 1`"""
    terms = []
    for position in range(length):
        period, i = divmod(position, 8)
        terms.extend((position, n + 56 * period, kind) for p, n, kind in THM24_TERMS if p == i)
    return terms


# Classes of Ext(L) that d2^* does not reach: the bottom two singles, the first bo_* and the (9, 2) bsp_*
KER_D2_OMITTED = ((0, 0), (3, 1), (5, 1), (9, 2))


def closed_form_ker_d2(stem_max: int, s_max: int) -> ExtChart:
    """ker(d2^*) on Ext(P), P = ker d1: the rest of Ext(L) moved from (x, s + 2) to (x + 2, s)"""
    chart = closed_form_thm24(stem_max - 2, s_max + 2, omit=KER_D2_OMITTED)
    return chart.shifted(2, -2, module='ker d2*')
