"""
Long exact Ext sequences of short exact sequences of modules
"""

import logging
from dataclasses import dataclass
from typing import Optional

from gmod.modules import ModuleMap
from .chainmaps import ExtMap, check_short_exact, connecting_hom, induced_map
from .exceptions import InexactSequenceError
from .extchart import Window
from .linalg import gf2_matmul
from .resolution import Resolution, minimal_resolution

logger = logging.getLogger(__name__)


@dataclass
class ShortExactSequence:
    """0 -> sub -i-> middle -p-> quotient -> 0"""
    i: ModuleMap
    p: ModuleMap
    name: str = ''

    @property
    def sub(self):
        return self.i.source

    @property
    def middle(self):
        return self.i.target

    @property
    def quotient(self):
        return self.p.target

    def check(self) -> dict:
        return check_short_exact(self.i, self.p)


@dataclass
class ExtSequence:
    """Resolutions of the three terms with the three maps of the long exact sequence"""
    ses: ShortExactSequence
    sub: Resolution
    middle: Resolution
    quotient: Resolution
    restrict: ExtMap
    project: ExtMap
    delta: ExtMap


def ext_sequence(ses: ShortExactSequence, s_max: int, t_max: int, threads: Optional[int] = None) -> ExtSequence:
    report = ses.check()
    if not report['valid']:
        raise InexactSequenceError(f'{ses.name or "Sequence"} is not short exact', report)
    sub = minimal_resolution(ses.sub, s_max, t_max, threads)
    middle = minimal_resolution(ses.middle, s_max, t_max, threads)
    quotient = minimal_resolution(ses.quotient, s_max, t_max, threads)
    return ExtSequence(
        ses, sub, middle, quotient,
        restrict=induced_map(ses.i, sub, middle),
        project=induced_map(ses.p, middle, quotient),
        delta=connecting_hom(ses.i, ses.p, sub, quotient),
    )


def _rank(m: ExtMap, s: int, t: int) -> int:
    return m.rank(s, t)


def les_check(seq: ExtSequence, window: Optional[Window] = None) -> dict:
    """Exactness of ... -> Ext^s(M3) -p*-> Ext^s(M2) -i*-> Ext^s(M1) -delta-> Ext^{s+1}(M3) -> ...

    Checked at every node whose bidegree lies in all three resolution windows.
    """
    s_max = min(seq.sub.s_max, seq.middle.s_max, seq.quotient.s_max)
    t_max = min(seq.sub.t_max, seq.middle.t_max, seq.quotient.t_max)
    window = Window(s_max, t_max) if window is None else window.intersect(Window(s_max, t_max))
    t_min = min(seq.sub.t_min, seq.middle.t_min, seq.quotient.t_min)
    failures = []
    checked = 0
    for s in range(window.s_max + 1):
        for t in range(t_min, window.t_max + 1):
            if not window.contains(s, t):
                continue
            p_s = seq.project.block(s, t)
            i_s = seq.restrict.block(s, t)
            d_s = seq.delta.block(s, t)
            dims = (seq.quotient.ext_dim(s, t), seq.middle.ext_dim(s, t), seq.sub.ext_dim(s, t))
            checked += 1 if any(dims) else 0
            if s == 0 and _rank(seq.project, 0, t) != dims[0]:
                failures.append({'node': 'quotient', 's': 0, 't': t, 'reason': 'p* not injective'})
            if gf2_matmul(i_s, p_s).any() or _rank(seq.project, s, t) + _rank(seq.restrict, s, t) != dims[1]:
                failures.append({'node': 'middle', 's': s, 't': t})
            if s + 1 > window.s_max:
                continue
            if gf2_matmul(d_s, i_s).any() or _rank(seq.restrict, s, t) + _rank(seq.delta, s, t) != dims[2]:
                failures.append({'node': 'sub', 's': s, 't': t})
            p_next = seq.project.block(s + 1, t)
            if gf2_matmul(p_next, d_s).any() or \
                    _rank(seq.delta, s, t) + _rank(seq.project, s + 1, t) != seq.quotient.ext_dim(s + 1, t):
                failures.append({'node': 'quotient', 's': s + 1, 't': t})
    if failures:
        logger.info('%s: long exact sequence fails at %d nodes', seq.ses.name or 'sequence', len(failures))
    return {
        'valid': not failures,
        'nodes_checked': checked,
        'window': window.to_dict(),
        'failures': failures,
    }
