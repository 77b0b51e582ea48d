"""
Cases on the S-duals DY and DX and on the module C of the cofibre sequences
"""

import numpy as np

from gmod.library import build_l, paper_module
from gmod.modules import FiniteModule, cyclic_isomorphism, quotient, submodule, suspend, tensor
from resolve.chainmaps import basis_class
from resolve.extchart import ext_chart
from resolve.sequences import ShortExactSequence, ext_sequence, les_check
from .cases import case, failed_checks, outcome, resolved


def bottom_vector(m: FiniteModule) -> np.ndarray:
    """The basis element in the lowest degree of a module that has exactly one there"""
    v = np.zeros(len(m), dtype=np.uint8)
    v[m.offsets[m.min_degree]] = 1
    return v


@case('dy_window', 'The class $\\nu$, indicated by $B$', inputs=('DY',))
def dy_window() -> dict:
    dy = paper_module('DY')
    top = dy.vector('y0*')
    sphere, i = submodule(dy, [top], name='S0')
    skeleton, p = quotient(dy, [top], name='DY^(-1)')
    seq = ext_sequence(ShortExactSequence(i, p, name='DY^(-1) -> DY -> S0'), 4, 8)
    les = les_check(seq)
    h2 = basis_class(seq.sub, 1, 4)
    checks = {
        'les_exact': les['valid'],
        'h0h2_from_DY': seq.restrict.rank(2, 5) >= 1,
        'h2_not_from_DY': seq.restrict.rank(1, 4) == 0,
        'h2_boundary_nonzero': not seq.delta.apply(h2).is_zero(),
    }
    return outcome(all(checks.values()), failed_checks(checks) + les['failures'],
                   nodes_checked=les['nodes_checked'],
                   note='A is the image of h0h2 and B is h2 in Ext(S0); B\' = delta(B). The circled class is '
                        'pinned as the unique nonzero class of Ext^{1,4}(S0); any other choice differs by zero.')


def _stem_column(chart, stem: int, s_max: int):
    return [chart.at_stem(stem, s) for s in range(s_max + 1)]


@case('dx_bo_copies', '15 additional copies of $bo_*$', inputs=('DX',))
def dx_bo_copies() -> dict:
    dx = paper_module('DX', 'A1')
    single = ext_chart(resolved('A1:DX', lambda: dx, 8, 8))
    square = ext_chart(resolved('A1:DX^DX', lambda: tensor(dx, dx, name='DX^DX'), 16, 16))
    column = _stem_column(square, 0, 16)
    checks = {
        'DX_stem_minus_one_empty': not any(_stem_column(single, -1, 8)),
        'DX_stem_zero_generator': single.at_stem(0, 0) >= 1,
        'DX^DX_stem_minus_one_empty': not any(_stem_column(square, -1, 15)),
        'DX^DX_bottom': all(column[s] == 1 for s in range(3)),
        'DX^DX_nondecreasing': all(a <= b for a, b in zip(column, column[1:])),
        'DX^DX_sixteen_towers': all(column[s] == 16 for s in range(12, 17)),
    }
    summands = {}
    for m in paper_module('DX_summands', 'A1'):
        chart = ext_chart(resolved(f'A1:{m.name}', lambda m=m: m, 8, 12))
        summands[m.name] = {str(stem): _stem_column(chart, stem, 8) for stem in range(-1, 4)}
    return outcome(all(checks.values()), failed_checks(checks), stem_zero=column,
                   additional_copies=column[-1] - 1, summands=summands)


@case('module_c', 'One easily checks that this $A_2$-module', inputs=('L', 'Y', 'A2modA1'))
def module_c() -> dict:
    L = build_l()
    sub, _ = submodule(L, [L.element('Sq1 i')], name='<Sq1 i>')
    rest, _ = quotient(L, [L.element('Sq1 i')], name='L/<Sq1 i>')
    y = suspend(paper_module('Y', 'A2'), 1)
    coideal_module = paper_module('A2modA1')
    coideal, _ = submodule(coideal_module, [coideal_module.element('Sq4 i')], name='coideal')
    coideal = suspend(coideal, -4)
    first = cyclic_isomorphism(sub, bottom_vector(sub), y, y.vector('y0'))
    second = cyclic_isomorphism(rest, bottom_vector(rest), coideal, bottom_vector(coideal))
    checks = {
        'sub_is_Sigma_Y': first['isomorphic'],
        'quotient_is_coideal': second['isomorphic'],
        'dimensions': (len(sub), len(rest), len(L)) == (9, 7, 16),
        'coideal_degrees': sorted(set(coideal_module.degrees)) == [0, 4, 6, 7, 10, 11, 13, 17],
    }
    return outcome(all(checks.values()), failed_checks(checks), sub=first, quotient=second,
                   dims={'sub': len(sub), 'quotient': len(rest), 'L': len(L)})
