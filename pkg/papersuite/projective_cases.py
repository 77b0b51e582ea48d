"""
Cases on L smashed with the stunted projective spaces P_1 and Q
"""

import logging
from typing import List, Tuple

from charts.assembly import Differential, Extension, Piece, apply_fact, assemble
from charts.charts import compare
from charts.exceptions import FactError
from gmod.library import build_l, paper_module
from gmod.modules import (
    FiniteModule, cyclic_isomorphism, quotient, restrict, submodule, suspend, tensor, truncated_projective,
)
from resolve.chainmaps import induced_map
from resolve.complexes import load_complex
from resolve.extchart import Window, ext_chart, tower_starts
from resolve.resolution import minimal_resolution
from .cases import case, failed_checks, outcome, resolved

logger = logging.getLogger(__name__)

Q_DEGREE = 84
Q_WINDOW = Window(8, 61, 53)


def _l_tensor_q() -> FiniteModule:
    return tensor(build_l(), truncated_projective('Q', Q_DEGREE), name='L.Q')


def _positive(m: FiniteModule) -> List:
    """Basis vectors whose projective-space factor x_i has i >= 1"""
    return [m.vector(n) for n in m.names if int(n.rsplit('x', 1)[1]) >= 1]


@case('q_splitting', '$\\bigoplus_{i\\ge-1}\\ext_{A_1}(\\Sigma^{8i-1}\\Ct)$', inputs=('L', 'Q(84)'))
def q_splitting() -> dict:
    lq = ext_chart(resolved('A2:L.Q', _l_tensor_q, Q_WINDOW.s_max, Q_WINDOW.t_max))
    over_a1 = ext_chart(resolved('A1:L', lambda: restrict(build_l(), 'A1'), 8, 70))
    pieces = []
    i = -1
    while 8 * i - 1 <= Q_WINDOW.stem_max:
        pieces.append(Piece(over_a1, 8 * i - 1, 0, f'Sigma^{8 * i - 1} L'))
        i += 1
    expected = assemble(pieces, Q_WINDOW, algebra='A1', module='sum of Sigma^{8i-1} L')
    result = compare(lq, expected, Q_WINDOW)
    starts = {str(stem): tower_starts(lq, stem) for stem in range(5, Q_WINDOW.stem_max + 1, 8)}
    return outcome(result['equal'], result['diffs'], cells=result['cells_compared'], tower_starts=starts,
                   note='tower starts are read from h0 edges between single cells and are reported only')


@case('lp1_stable_range', 'if $s\\le8$ and $t-s\\ge53$', inputs=('L', 'Q(84)', 'HP1(84)'))
def lp1_stable_range() -> dict:
    q = truncated_projective('Q', Q_DEGREE)
    negative, _ = quotient(q, _positive(q), name='Q/P1')
    bottom = negative.vector('x-9')
    cells, _ = submodule(negative, [bottom], name='<x-9>')
    m7 = suspend(paper_module('M7', 'A2'), -9)
    quotient_checks = {
        'Q_mod_P1_has_five_cells': len(negative) == 5,
        'x-9_generates_S-9M7': cyclic_isomorphism(cells, cells.vector('x-9'), m7, m7.vector('e0'))['isomorphic'],
    }

    lq = resolved('A2:L.Q', _l_tensor_q, Q_WINDOW.s_max, Q_WINDOW.t_max)
    lp1, inclusion = submodule(lq.module, _positive(lq.module), name='L.P1')
    rest, projection = quotient(lq.module, _positive(lq.module), name='L.(Q/P1)')
    exact = inclusion.check()['valid'] and projection.check()['valid'] and \
        inclusion.rank() + len(rest) == len(lq.module)
    r = minimal_resolution(lp1, Q_WINDOW.s_max, Q_WINDOW.t_max)
    restriction = induced_map(inclusion, r, lq)
    diffs = []
    checked = 0
    for s in range(Q_WINDOW.s_max + 1):
        for stem in range(Q_WINDOW.stem_max, Q_WINDOW.t_max - s + 1):
            t = stem + s
            checked += 1
            n, m = lq.ext_dim(s, t), r.ext_dim(s, t)
            if n != m or restriction.rank(s, t) != n:
                diffs.append({'s': s, 't': t, 'stem': stem, 'L.Q': n, 'L.P1': m, 'rank': restriction.rank(s, t)})
    diffs = failed_checks({**quotient_checks, 'sequence_exact': exact}) + diffs
    return outcome(not diffs, diffs, cells=checked)


def _complex_assembly(factor: FiniteModule, window: Window, label: str):
    """Sum of Ext(C_s (x) factor) raised s filtrations, over the terms of the periodic resolution of L"""
    complex_ = load_complex('thm24.cx')
    pieces = []
    for s, term in enumerate(complex_.terms):
        if s > window.s_max or term.min_degree + factor.min_degree > window.t_max:
            break
        r = minimal_resolution(tensor(term, factor, name=f'C{s}.{label}'), window.s_max - s, window.t_max)
        pieces.append(Piece(ext_chart(r), -s, s, f'C{s}.{label}'))
    return pieces, assemble(pieces, window, algebra='A2', module=f'L.{label}').chart()


def _against_brute_force(key: str, factor: FiniteModule, window: Window, label: str) -> dict:
    pieces, assembled = _complex_assembly(factor, window, label)
    brute = ext_chart(resolved(key, lambda: tensor(build_l(), factor, name=f'L.{label}'),
                               window.s_max, window.t_max))
    result = compare(brute, assembled, window)
    return {
        'bounded': all(d['left'] <= d['right'] for d in result['diffs']),
        'bottom_free': all(s == 0 for (s, _) in pieces[0].chart.dims),
        'collapses': result['equal'],
        'differing_cells': result['diffs'],
        'cells': result['cells_compared'],
    }


@case('thm59_assembly', 'and collapses', inputs=('thm24.cx', 'HP1(39)', 'M7'))
def thm59_assembly() -> dict:
    window = Window(4, 16, 12)
    p1 = _against_brute_force('A2:L.P1', truncated_projective('P1', window.t_max + 23), window, 'P1')
    m7 = _against_brute_force('A2:L.M7', paper_module('M7', 'A2'), window, 'M7')
    checks = {
        'P1_bounded_by_assembly': p1['bounded'],
        'P1_bottom_piece_in_filtration_0': p1['bottom_free'],
        'M7_bounded_by_assembly': m7['bounded'],
        'M7_bottom_piece_in_filtration_0': m7['bottom_free'],
    }
    return outcome(all(checks.values()), failed_checks(checks), P1=p1, M7=m7)


THM51_WINDOW = Window(8, 39, 31)


def thm51_classes(stem_limit: int) -> List[Tuple[int, int, int, int]]:
    """(e1, e2, stem, filtration) of the generator of each a^e1 v2^e2 summand below stem_limit"""
    found = []
    e2 = 0
    while 6 * e2 < stem_limit:
        e1 = 1
        while 2 * e1 + 6 * e2 < stem_limit:
            if e1 % 2 == e2 % 2:
                filtration = e2
                varies = (e1 == 2 and e2 % 8 == 0) or (e1 == 1 and e2 % 8 in (1, 3))
                if (e1 - e2) % 4 == 2 and not varies:
                    filtration = e2 + 1
                found.append((e1, e2, 2 * e1 + 6 * e2, filtration))
            e1 += 1
        e2 += 1
    return found


@case('thm51_chart', 'matching the pattern of the bo and tmf pieces', inputs=('HP1(45)', 'L', 'HP1(61)'))
def thm51_chart() -> dict:
    window = THM51_WINDOW
    bottom = resolved('A1:SP1', lambda: suspend(truncated_projective('P1', window.t_max + 6, 'A1'), 1, name='SP1'),
                      window.s_max, window.t_max)
    top = resolved('A2:S4L.P1', lambda: suspend(tensor(build_l(), truncated_projective('P1', 61)), 4, name='S4L.P1'),
                   window.s_max - 1, window.t_max - 1)
    chart = assemble([Piece(ext_chart(bottom), 0, 0, 'bo.SP1'), Piece(ext_chart(top), 0, 1, 'S4 L.P1')],
                     window, algebra='A2', module='P1 chart')
    diffs = []
    for i in range(1, 4):
        for fact in (Differential(1, (8 * i + 4, 0), (8 * i + 3, 1), 'd1 from bo_{8i+4}(Sigma P1)'),
                     Extension('eta', (8 * i, 0), (8 * i + 1, 1), 'eta on bo_{8i}(Sigma P1)')):
            try:
                chart = apply_fact(chart, fact)
            except FactError as e:
                diffs.append({'check': 'fact', 'fact': fact.annotation(), 'error': str(e)})
    for e1, e2, stem, filtration in thm51_classes(window.stem_max + 1):
        if chart.dim(stem, filtration) < 1:
            diffs.append({'check': 'summand', 'e1': e1, 'e2': e2, 'stem': stem, 'filtration': filtration})
    for i in range(1, 4):
        if chart.dim(8 * i + 2, 1) < 1:
            diffs.append({'check': 'x_8i+2', 'stem': 8 * i + 2, 'filtration': 1})
    return outcome(not diffs, diffs, total=chart.total(), facts=len(chart.differentials) + len(chart.extensions))
