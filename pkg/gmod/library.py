"""
Named modules used throughout the Ext computations
"""

import logging
import re
from functools import lru_cache
from typing import Callable, Dict, List, Optional

from .exceptions import ModuleValidationError, UnknownModuleError
from .extensions import extend_module
from .modules import (
    FiniteModule, direct_sum, dualize, quotient, restrict, suspend, tensor, trivial_module,
    truncated_projective,
)
from .presentations import present, quotient_by_left_ideal
from .weights import bo_cohomology

logger = logging.getLogger(__name__)


def build_m7(algebra: str = 'A') -> FiniteModule:
    """H^*(X_7), cells 0, 4, 6, 7 attached by nu, eta, 2"""
    return FiniteModule.from_arrows(
        algebra,
        [('e0', 0), ('e4', 4), ('e6', 6), ('e7', 7)],
        [(4, 'e0', ['e4']), (2, 'e4', ['e6']), (1, 'e6', ['e7'])],
        name='M7',
    )


def build_m421(algebra: str = 'A') -> FiniteModule:
    return FiniteModule.from_arrows(
        algebra,
        [('f0', 0), ('f1', 1), ('f3', 3), ('f7', 7)],
        [(1, 'f0', ['f1']), (2, 'f1', ['f3']), (4, 'f3', ['f7'])],
        name='M421',
    )


def build_x3(algebra: str = 'A') -> FiniteModule:
    """H^*(S^0 u_eta e^2 u_2 e^3)"""
    return FiniteModule.from_arrows(
        algebra,
        [('c0', 0), ('c2', 2), ('c3', 3)],
        [(2, 'c0', ['c2']), (1, 'c2', ['c3'])],
        name='X3',
    )


def build_y() -> FiniteModule:
    """H^*(Y): H^*(X_3 ^ X_7) modulo the image of the cells 6, 7, 9 of S^6 u_2 e^7 u_eta e^9"""
    product = tensor(build_x3(), build_m7(), name='X3^X7')
    image = [
        product.vector('c2.e4', 'c0.e6'),
        product.vector('c3.e4', 'c0.e7'),
        product.vector('c3.e6', 'c2.e7'),
    ]
    y, _ = quotient(product, image, name='Y')
    return y.relabeled([f'y{d}' for d in y.degrees])


def build_dy() -> FiniteModule:
    return dualize(build_y(), name='DY')


def build_dx() -> FiniteModule:
    """H^*(DX) = H^*(Sigma^-4 DY) + H^*(S^0)"""
    return direct_sum([suspend(build_dy(), -4), trivial_module('A', 0)], labels=['', 'top_'], name='DX')


def build_dx_summands() -> List[FiniteModule]:
    return [suspend(build_dy(), -4, name='S-4DY'), trivial_module('A', 0)]


def build_l() -> FiniteModule:
    return quotient_by_left_ideal('A2', ['Sq4', 'Sq5Sq1'], name='L')


def build_a2moda1() -> FiniteModule:
    return quotient_by_left_ideal('A2', ['Sq1', 'Sq2'], name='A2//A1')


def build_a2modsq1sq5() -> FiniteModule:
    return quotient_by_left_ideal('A2', ['Sq1', 'Sq5'], name='A2/(Sq1,Sq5)')


def build_a2modsq3() -> FiniteModule:
    return quotient_by_left_ideal('A2', ['Sq3'], name='A2/(Sq3)')


def build_a2modsq1() -> FiniteModule:
    return quotient_by_left_ideal('A2', ['Sq1'], name='A2/(Sq1)')


def build_c25_26() -> FiniteModule:
    return present('A2', [('I25', 25), ('I26', 26)], ['Sq1 I25', 'Sq3 I25 + Sq2 I26'], name='C25_26')


def build_bo2() -> FiniteModule:
    return bo_cohomology(2, 'A')


def b_extension_data(base: FiniteModule):
    """New class x17 = Sq^2 of the top class; Sq^4 from the degree-13 class left open"""
    top = base.names[base.offsets[15]]
    thirteen = base.names[base.offsets[13]]
    return [('x17', 17)], [(2, top, ['x17'])], [(4, thirteen, 'x17')]


def build_b(algebra: str = 'A2') -> FiniteModule:
    """The A(2)-module B: H^*(bo_2) with one class in degree 17 attached by Sq^2 to the top class"""
    base = restrict(build_bo2(), algebra)
    new, fixed, unknown = b_extension_data(base)
    completions = extend_module(base, new, fixed, unknown, name='B')
    if len(completions) != 1:
        raise ModuleValidationError(f'B has {len(completions)} completions over {algebra}, expected 1')
    return completions[0]['module']


MODULE_BUILDERS: Dict[str, Callable[[], object]] = {
    'F2': lambda: trivial_module('A2'),
    'M7': build_m7,
    'M421': build_m421,
    'X3': build_x3,
    'Y': build_y,
    'DY': build_dy,
    'DX': build_dx,
    'DX_summands': build_dx_summands,
    'L': build_l,
    'A2modA1': build_a2moda1,
    'A2modSq1Sq5': build_a2modsq1sq5,
    'A2modSq3': build_a2modsq3,
    'A2modSq1': build_a2modsq1,
    'C25_26': build_c25_26,
    'bo2_cohomology': build_bo2,
    'B': build_b,
}

_SIZED = re.compile(r'^(HP1|Q)\((\d+)\)$')


@lru_cache(maxsize=None)
def _cached(name: str):
    match = _SIZED.match(name)
    if match:
        kind = 'P1' if match.group(1) == 'HP1' else 'Q'
        return truncated_projective(kind, int(match.group(2)), 'A2')
    builder = MODULE_BUILDERS.get(name)
    if builder is None:
        raise UnknownModuleError(f"No module named '{name}'")
    logger.debug('Building library module %s', name)
    return builder()


def paper_module(name: str, algebra: Optional[str] = None):
    """A named module, restricted to a subalgebra when requested"""
    module = _cached(name)
    if algebra is None:
        return module
    if isinstance(module, list):
        return [restrict(m, algebra) for m in module]
    if module.algebra == algebra:
        return module
    return restrict(module, algebra)


def module_names() -> List[str]:
    return sorted(MODULE_BUILDERS) + ['HP1(d)', 'Q(d)']
