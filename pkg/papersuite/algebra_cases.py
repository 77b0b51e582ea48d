"""
Cases on the algebra itself, the weight decomposition and the A(1) ground truth
"""

from itertools import product

from charts.assembly import Piece, assemble
from charts.charts import compare
from charts.patterns import bo_pattern, bsp_pattern
from gmod.library import paper_module
from gmod.modules import trivial_module
from gmod.weights import phi_report, weight_decomposition
from resolve.extchart import Window, ext_chart
from steenrod.algebra import (
    MilnorElement, basis_convert, conjugate, iter_basis, milnor_multiply, multiply,
)
from .cases import case, outcome, resolved

SQ_DEGREES = (1, 2, 4)


@case('algebra_axioms', 'generated by Sq^i subject to the Adem relations', inputs=('A2',))
def algebra_axioms() -> dict:
    basis = [MilnorElement('A2', frozenset([r]), d) for d, r in iter_basis('A2')]
    admissible = [x.to_admissible() for x in basis]
    diffs = []
    if len(basis) != 64:
        diffs.append({'check': 'dimension', 'found': len(basis)})
    for (x, ax), (y, ay) in product(zip(basis, admissible), repeat=2):
        if multiply(ax, ay).to_milnor() != milnor_multiply(x, y):
            diffs.append({'check': 'conversion', 'left': str(x), 'right': str(y)})
    generators = [MilnorElement('A2', frozenset([(d,)]), d) for d in SQ_DEGREES]
    for x, y, z in product(basis, basis, generators):
        if milnor_multiply(milnor_multiply(x, y), z) != milnor_multiply(x, milnor_multiply(y, z)):
            diffs.append({'check': 'associativity', 'elements': [str(x), str(y), str(z)]})
    for x, ax in zip(basis, admissible):
        if basis_convert(ax) != x:
            diffs.append({'check': 'round_trip', 'element': str(x)})
        if conjugate(conjugate(ax)) != ax:
            diffs.append({'check': 'antipode', 'element': str(x)})
    # ((xy)w)g = (xy)(wg) for generators g gives every triple by induction on the length of w
    return outcome(not diffs, diffs[:50], pairs=len(basis) ** 2, failures=len(diffs),
                   associativity='x, y over the basis, z over Sq1, Sq2, Sq4; these generate A(2)')


def _weights(ns) -> dict:
    diffs, sizes = [], {}
    for n in ns:
        series_m, series_bo = weight_decomposition(n, 40)
        for d in range(41):
            if series_m[d] != series_bo[d]:
                diffs.append({'n': n, 'degree': d, 'M_n': series_m[d], 'bo_n': series_bo[d]})
        report = phi_report(n, 40)
        if not report['valid']:
            diffs.append({'n': n, 'check': 'phi', **report})
        sizes[n] = sum(series_m.values())
    return outcome(not diffs, diffs, through_degree=40, sizes=sizes)


@case('weights_n2', 'as a sum of weight-graded pieces', inputs=('M_2', 'bo_2'))
def weights_n2() -> dict:
    return _weights([2])


@case('weights_all', 'as a sum of weight-graded pieces', inputs=('M_n', 'bo_n'))
def weights_all() -> dict:
    return _weights(range(5))


@case('bo_bsp_ground_truth', 'the standard charts of bo and bsp', inputs=('F2', 'M7'))
def bo_bsp_ground_truth() -> dict:
    window = Window(12, 36, 24)
    sphere = ext_chart(resolved('A1:F2', lambda: trivial_module('A1'), 12, 36))
    first = compare(sphere, bo_pattern(24, 12), window)
    m7 = ext_chart(resolved('A1:M7', lambda: paper_module('M7', 'A1'), 12, 36))
    expected = assemble([Piece(bo_pattern(24, 12), 0, 0, 'bo'), Piece(bsp_pattern(20, 12), 4, 0, 'Sigma^4 bsp')],
                        window, algebra='A1', module='M7')
    second = compare(m7, expected, window)
    diffs = [dict(d, module='F2') for d in first['diffs']] + [dict(d, module='M7') for d in second['diffs']]
    return outcome(not diffs, diffs, cells=first['cells_compared'] + second['cells_compared'])

