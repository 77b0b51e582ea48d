"""
Completions of partially known module structures: every assignment of the unknown
action bits that the validator accepts.
"""

import itertools
import logging
from typing import Iterable, List, Sequence, Tuple

from .modules import Arrow, FiniteModule

logger = logging.getLogger(__name__)

UnknownArrow = Tuple[int, str, str]


def extend_module(m: FiniteModule, new_classes: Iterable[Tuple[str, int]], fixed: Iterable[Arrow] = (),
                  unknown: Sequence[UnknownArrow] = (), algebra: str = None,
                  name: str = '') -> List[dict]:
    """Add classes and arrows to m and keep the completions that are modules.

    Each unknown arrow (g, source, target) is tried both absent and present. Returns one
    entry per valid completion: {'assignment': {(g, source, target): bit}, 'module': FiniteModule}.
    """
    algebra = algebra or m.algebra
    basis = m.basis + list(new_classes)
    base_arrows = list(m.arrows()) + list(fixed)
    completions = []
    for bits in itertools.product((0, 1), repeat=len(unknown)):
        arrows = list(base_arrows)
        for bit, (g, source, target) in zip(bits, unknown):
            if bit:
                arrows.append((g, source, [target]))
        candidate = FiniteModule.from_arrows(algebra, basis, arrows, name=name or m.name)
        report = candidate.validate()
        if report['valid']:
            completions.append({'assignment': dict(zip(unknown, bits)), 'module': candidate})
    logger.info('%s: %d of %d completions over %s are modules', name or m.name, len(completions),
                2 ** len(unknown), algebra)
    return completions
