"""
Cases around M7, bo_2 and the module B
"""

from charts.assembly import Differential, Piece, assemble, apply_fact
from charts.exceptions import FactError
from gmod.extensions import extend_module
from gmod.library import b_extension_data, build_b, build_l, paper_module
from gmod.modules import cyclic_isomorphism, quotient, restrict, submodule, suspend
from gmod.presentations import free_module, map_from_generators, present
from resolve.extchart import Window, ext_chart
from resolve.resolution import minimal_resolution
from resolve.sequences import ShortExactSequence, ext_sequence, les_check
from steenrod.algebra import adem_reduce
from .cases import case, failed_checks, outcome, resolved

DIAGRAM_WINDOW = Window(7, 46, 39)


def _section4_pieces():
    m7 = resolved('A2:S8M7', lambda: suspend(paper_module('M7', 'A2'), 8, name='S8M7'), 7, 46)
    bo2 = resolved('A2:S16bo2', lambda: suspend(paper_module('bo2_cohomology', 'A2'), 16, name='S16bo2'), 7, 46)
    return m7, bo2


def b_sequence() -> dict:
    """0 -> Sigma^17 F2 -> B -> bo_2 -> 0"""
    b = build_b('A2')
    top = b.vector('x17')
    sub, i = submodule(b, [top], name='x17')
    rest, p = quotient(b, [top], name='B/x17')
    base = restrict(paper_module('bo2_cohomology'), 'A2')
    seq = ext_sequence(ShortExactSequence(i, p, name='x17 -> B -> bo2'), 3, 30)
    return {
        'b_quotient_is_bo2': rest.same_structure(base),
        'b_sequence_exact': les_check(seq)['valid'],
        'b_sub_is_point': len(sub) == 1,
    }


def thm48_sequence() -> dict:
    """I = ker(A2 -> L), K = A2 Sq7 i4 and g: Sigma^11 A2/(Sq1) -> K"""
    L = build_l()
    free = free_module('A2', [('i', 0)], name='A2')
    onto_L = map_from_generators(free, L, {'i': L.generator_vector('i')}, name='A2 -> L')
    ideal, ideal_inc = onto_L.kernel('I')
    sq4 = ideal_inc.preimage(free.element('Sq4 i'))
    sq5sq1 = ideal_inc.preimage(free.element('Sq5Sq1 i'))
    rest, proj = quotient(ideal, [sq4], name='I/A2 Sq4')
    m7 = suspend(paper_module('M7', 'A2'), 6, name='S6M7')
    ideal_mod_sq4 = cyclic_isomorphism(rest, proj.apply(sq5sq1), m7, m7.vector('e0'))

    free4 = free_module('A2', [('i4', 4)], name='S4A2')
    K, k_inc = submodule(free4, [free4.element('Sq7 i4')], name='K')
    to_free = map_from_generators(free4, free, {'i4': free.element('Sq4 i')}, name='i4 -> Sq4 i')
    kernel_of_sq4, _ = to_free.kernel()
    source = present('A2', [('j', 11)], ['Sq1 j'], name='S11 A2/(Sq1)')
    g = map_from_generators(source, K, {'j': k_inc.preimage(free4.element('Sq7 i4'))}, name='g')
    ker_g, ker_inc = g.kernel('ker g')
    b16 = suspend(build_b('A2'), 16)
    generators = minimal_resolution(ker_g, 0, ker_g.max_degree).generators(0)
    seq = ext_sequence(ShortExactSequence(ker_inc, g, name='ker g -> S11 A2/(Sq1) -> K'), 3, 30)
    les = les_check(seq)
    return {
        'I_mod_Sq4_is_S6M7': ideal_mod_sq4['isomorphic'],
        'K_is_kernel_of_Sq4': kernel_of_sq4.graded_dimension() == K.graded_dimension(),
        'g_onto': g.rank() == len(K),
        'ker_g_dims_are_S16B': ker_g.graded_dimension() == b16.graded_dimension(),
        'ker_g_generators': sorted(d for _, d in generators) == [16, 24],
        'thm48_les_exact': les['valid'],
    }


@case('section4', 'without the $\\zt$ in $\\ext^{0,4}$', inputs=('M7', 'bo2_cohomology', 'B', 'L'))
def section4() -> dict:
    m7, bo2 = _section4_pieces()
    m7_chart, bo2_chart = ext_chart(m7), ext_chart(bo2)
    assembled = assemble([Piece(m7_chart, label='S8M7'), Piece(bo2_chart, label='S16bo2')], DIAGRAM_WINDOW,
                         algebra='A2', module='S8M7 + S16bo2')
    try:
        apply_fact(assembled, Differential(3, (24, 0), (23, 3), 'such that $d_3(g)=w$'))
        fact_applies = True
    except FactError:
        fact_applies = False
    checks = {
        'g_in_ext_0_24': m7.ext_dim(0, 24) + bo2.ext_dim(0, 24) == 1,
        'w_in_ext_3_26_of_S8M7': m7.ext_dim(3, 26) == 1,
        'd3_g_w_applies': fact_applies,
        **b_sequence(),
        **thm48_sequence(),
    }
    return outcome(all(checks.values()), failed_checks(checks), total=assembled.total(),
                   window=DIAGRAM_WINDOW.to_dict())


@case('b_probe_a3', 'one class in degree 17', inputs=('bo2_cohomology',))
def b_probe_a3() -> dict:
    b = build_b('A2')
    base = restrict(paper_module('bo2_cohomology'), 'A3')
    new, fixed, unknown = b_extension_data(base)
    completions = extend_module(base, new, fixed, unknown, name='B over A3')
    adem = adem_reduce([2, 15]) == adem_reduce([1, 16]) + adem_reduce([16, 1])
    checks = {
        'unique_over_A2': len(b) == len(restrict(paper_module('bo2_cohomology'), 'A2')) + 1,
        'sq2_sq15': adem,
    }
    return outcome(all(checks.values()), failed_checks(checks), completions_over_A3=len(completions),
                   assignments=[{f'Sq{g} {s} -> {t}': bit for (g, s, t), bit in c['assignment'].items()}
                                for c in completions])
