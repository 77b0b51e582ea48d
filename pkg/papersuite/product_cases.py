"""
Chain-level cases: the lifting behind the v2^4 self map and the P-sequence of the second section
"""

import logging

import numpy as np

from charts.charts import compare
from charts.closed_forms import closed_form_ker_d2
from gmod.library import build_l, paper_module
from gmod.modules import cyclic_map, descend, factor_through, suspend, trivial_module
from gmod.presentations import free_cover, map_from_generators, present
from resolve.chainmaps import basis_class, connecting_hom, h_action, induced_map, yoneda_product
from resolve.complexes import check_step, lift_step, load_complex
from resolve.extchart import ExtChart, Window
from resolve.resolution import minimal_resolution
from resolve.sequences import ShortExactSequence
from .cases import case, failed_checks, outcome, resolved

logger = logging.getLogger(__name__)


@case('thm27_lifting', '$f_4(\\iota_{25})=\\sq^1\\iota_{24}$', inputs=('thm24.cx', 'L'))
def thm27_lifting() -> dict:
    c = load_complex('thm24.cx')
    shifted = c.shifted(20)
    s0, s1, s2 = shifted.terms[:3]
    f3 = map_from_generators(c.terms[3], s0, {'I20': s0.generator_vector('I0')}, name='f3')
    f4_images = {
        'I25': s1.element('Sq1 I4'),
        'I26': s1.element('Sq2 I4') ^ s1.generator_vector('I6'),
    }
    f4_commutes = check_step(c.terms[4], c.differential(4), f3, shifted.differential(1), f4_images)

    # f5 exists only on the free cover of C5: Sq3 I36 = 0 would need Sq3 I16 = 0 in the free summand.
    # Only x o f5 has to kill the relations of C5.
    cover = free_cover(c.terms[5])
    f5, kills_relations = None, False
    if f4_commutes:
        f4 = map_from_generators(c.terms[4], s1, f4_images, name='f4')
        d5 = map_from_generators(cover, c.terms[4], c.images[5], name='d5')
        f5 = lift_step(cover, d5, f4, s2, shifted.differential(2))
    x = s2.generator_vector('I16')
    if f5 is not None:
        kills_relations = True
        for relation in c.terms[5].relations:
            value = np.zeros(len(s2), dtype=np.uint8)
            for coefficient, generator in relation:
                value ^= s2.act(coefficient, f5[generator])
            kills_relations = kills_relations and not (value & x).any()

    r = resolved('A2:L', build_l, 6, 40)
    h2 = h_action(r, 2)
    sphere = resolved('A2:F2', lambda: trivial_module('A2'), 3, 15)
    products = {}
    if sphere.ext_dim(3, 15) == 1:
        b = basis_class(sphere, 3, 15)
        for i in (1, 2):
            s, t = 2 * i - 1, 10 * i - 4
            products[i] = any(
                not yoneda_product(r, basis_class(r, s, t, k), sphere, b).is_zero()
                for k in range(r.ext_dim(s, t))
            )
    checks = {
        'f4_commutes': f4_commutes,
        'f5_exists': f5 is not None,
        'f5_hits_iota36': f5 is not None and bool((f5['I36'] & x).any()),
        'x_f5_kills_relations': kills_relations,
        'ext_5_36': r.ext_dim(5, 36) >= 1,
        'h2_on_ext_5_36': h2.rank(5, 36) >= 1,
        'ext_3_15_of_F2': sphere.ext_dim(3, 15) == 1,
        'product_i1': products.get(1, False),
        'product_i2': products.get(2, False),
    }
    return outcome(all(checks.values()), failed_checks(checks),
                   f5={g: s2.support(v) for g, v in (f5 or {}).items()},
                   lifted_on='free cover of C5')


def p_sequence_data():
    """The two short exact sequences splitting P = ker d1 of the periodic resolution"""
    c = load_complex('thm24.cx')
    d1, d2 = c.differential(1), c.differential(2)
    P, p_inc = d1.kernel('P')
    d2P = factor_through(d2, p_inc, name='d2')
    A = present('A2', [('I11', 11)], ['Sq1 I11', 'Sq5 I11'], name='S11 A2/(Sq1,Sq5)')
    d2A = map_from_generators(A, P, {'I11': d2P.apply(c.terms[2].generator_vector('I11'))}, name='d2|A')
    K, k_inc = d2A.image('K')
    onto_K = factor_through(d2A, k_inc, name='A -> K')
    m7 = suspend(paper_module('M7', 'A2'), 24, name='S24M7')
    i = cyclic_map(m7, m7.vector('e0'), A, A.element('(Sq6Sq7 + Sq4Sq6Sq3) I11'), name='S24M7 -> A')
    m421 = suspend(paper_module('M421', 'A2'), 16, name='S16M421')
    to_m421 = map_from_generators(c.terms[2], m421, {'I16': m421.vector('f0')}, name='C2 -> S16M421')
    q = descend(to_m421, d2P, name='P -> S16M421')
    return {
        'P': P, 'A': A, 'K': K, 'd2A': d2A,
        'first': ShortExactSequence(i, onto_K, name='S24M7 -> A -> K'),
        'second': ShortExactSequence(k_inc, q, name='K -> P -> S16M421'),
    }


@case('p_sequence', 'Therefore, $E_2(Z\\w\\tmf)\\approx\\ker(d_2^*)$', inputs=('thm24.cx', 'M7', 'M421'))
def p_sequence() -> dict:
    data = p_sequence_data()
    first, second = data['first'], data['second']
    exact = {'first_exact': first.check()['valid'], 'second_exact': second.check()['valid']}
    if not all(exact.values()):
        return outcome(False, failed_checks(exact))

    m7 = minimal_resolution(first.sub, 2, 24)
    k = minimal_resolution(first.quotient, 2, 24)
    m421 = minimal_resolution(second.quotient, 2, 24)
    delta1 = connecting_hom(first.i, first.p, m7, k)
    delta2 = connecting_hom(second.i, second.p, k, m421)
    image = delta2.apply(delta1.apply(basis_class(m7, 0, 24)))
    h2 = h_action(m421, 2)
    nu_squared = h2.apply(h2.apply(basis_class(m421, 0, 16)))

    window = Window(6, 36, 30)
    P = minimal_resolution(data['P'], window.s_max, window.t_max)
    A = minimal_resolution(data['A'], window.s_max, window.t_max)
    d2_star = induced_map(data['d2A'], A, P)
    kernel, onto = {}, True
    for s in range(window.s_max + 1):
        for t in P.degrees:
            n = P.ext_dim(s, t) - d2_star.rank(s, t)
            if n:
                kernel[(s, t)] = n
            onto = onto and d2_star.rank(s, t) == A.ext_dim(s, t)
    chart = ExtChart('A2', 'ker d2*', window, kernel)
    expected = compare(chart, closed_form_ker_d2(30, 6), window)
    checks = {
        **exact,
        'delta_delta_is_h2_squared': image.coefficients == nu_squared.coefficients,
        'h2_squared_nonzero': not nu_squared.is_zero(),
        'ext_2_24_of_P_zero': P.ext_dim(2, 24) == 0,
        'd2_star_onto': onto,
    }
    diffs = failed_checks(checks) + [dict(d, against='ker_d2') for d in expected['diffs']]
    return outcome(not diffs, diffs, kernel_cells=expected['cells_compared'],
                   P_dim=len(data['P']), K_dim=len(data['K']))
