"""
Cases on the periodic resolution of L and on Ext_{A(2)}(L)
"""

import logging

import numpy as np

from charts.assembly import phi_assembly
from charts.charts import compare
from charts.closed_forms import closed_form_thm24, periodic_terms
from gmod.library import build_l
from resolve.complexes import load_complex, verify_complex
from resolve.extchart import Window, ext_chart
from .cases import case, failed_checks, outcome, resolved

logger = logging.getLogger(__name__)

CERTIFIED_DEGREE = 79


@case('resolution_exactness', 'an exact sequence of $A_2$-modules', inputs=('thm24.cx', 'L'))
def resolution_exactness() -> dict:
    complex_ = load_complex('thm24.cx')
    report = verify_complex(complex_, CERTIFIED_DEGREE)
    diffs = [dict(f) for f in report['failures']]
    candidate = report['erratum_candidate']
    if candidate is not None:
        diffs.append({'check': 'ERRATUM-CANDIDATE', **candidate})

    # the check must notice a broken differential
    broken = complex_.with_image(1, 'I4', np.zeros(len(complex_.terms[0]), dtype=np.uint8))
    mutated = verify_complex(broken, 8, search=False)
    if mutated['valid']:
        diffs.append({'check': 'mutation_detected'})
    return outcome(not diffs, diffs, exact_through=report['exact_through'], dd_zero=report['dd_zero'],
                   terms=len(complex_), mutation_failures=len(mutated['failures']))


@case('thm24_chart', 'As a bigraded abelian group', inputs=('L',))
def thm24_chart() -> dict:
    window = Window(16, 64, 48)
    chart = ext_chart(resolved('A2:L', build_l, 16, 64))
    closed = compare(chart, closed_form_thm24(48, 16), window)
    assembled = compare(chart, phi_assembly(48, 16), window)
    diffs = [dict(d, against='closed_form') for d in closed['diffs']]
    diffs += [dict(d, against='assembly') for d in assembled['diffs']]
    return outcome(not diffs, diffs, cells=closed['cells_compared'], total=chart.total())


@case('periodicity', '$C_{i+8}\\approx\\Sigma^{56}C_i$', inputs=('L', 'thm24.cx'))
def periodicity() -> dict:
    """Ext^{s+8,t+56}(L) is Ext^{s,t}(L) plus what C_0, ..., C_7 contribute there.

    C_{i+8} = Sigma^56 C_i moves every piece of Ext(Sigma^-i C_i) by (48, 8); the pieces of the
    first period are bo_* and bsp_* patterns, which keep going in stem and are not moved.
    """
    r = resolved('A2:L', build_l, 16, 104)
    first_period = phi_assembly(88, 16, periodic_terms(8)).chart()
    diffs = []
    compared = extra = 0
    for s in range(9):
        for stem in range(41):
            t = stem + s
            compared += 1
            below = first_period.at_stem(stem + 48, s + 8)
            extra += below
            if r.ext_dim(s, t) + below != r.ext_dim(s + 8, t + 56):
                diffs.append({'s': s, 't': t, 'stem': stem, 'left': r.ext_dim(s, t), 'first_period': below,
                              'right': r.ext_dim(s + 8, t + 56)})
    complex_ = load_complex('thm24.cx')
    first, eighth = complex_.terms[0], complex_.terms[8]
    diffs += failed_checks({
        'C8_is_Sigma56_C0': first.graded_dimension() == {d - 56: n for d, n in eighth.graded_dimension().items()},
    })
    return outcome(not diffs, diffs, cells=compared, first_period_classes=extra)
