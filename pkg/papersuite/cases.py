"""
Registry of verification cases

A case is a function returning {'success', 'diffs', 'details'}; it is registered with an
anchor quoting the statement it checks. Resolutions shared between cases are memoized.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from gmod.modules import FiniteModule
from resolve.resolution import Resolution, minimal_resolution
from .exceptions import UnknownCaseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteCase:
    id: str
    anchor: str
    inputs: Tuple[str, ...]
    func: Callable[[], dict]

    def run(self) -> dict:
        return self.func()


REGISTRY: Dict[str, SuiteCase] = {}


def case(case_id: str, anchor: str, inputs: Sequence[str] = ()):
    """Register the decorated function as the case `case_id`"""
    def register(func: Callable[[], dict]) -> Callable[[], dict]:
        if case_id in REGISTRY:
            raise ValueError(f"Case '{case_id}' is registered twice")
        REGISTRY[case_id] = SuiteCase(case_id, anchor, tuple(inputs), func)
        return func
    return register


def get_case(case_id: str) -> SuiteCase:
    try:
        return REGISTRY[case_id]
    except KeyError:
        raise UnknownCaseError(f"No suite case '{case_id}'; known cases: {', '.join(case_ids())}") from None


def case_ids() -> List[str]:
    return sorted(REGISTRY)


def outcome(success: bool, diffs: Optional[List[dict]] = None, **details) -> dict:
    return {'success': bool(success), 'diffs': list(diffs or []), 'details': details}


def failed_checks(checks: Dict[str, bool]) -> List[dict]:
    """One diff entry per named check that does not hold"""
    return [{'check': name} for name, ok in checks.items() if not ok]


_resolutions: Dict[Tuple[str, int, int], Resolution] = {}
_pending: Dict[Tuple[str, int, int], threading.Lock] = {}
_lock = threading.Lock()


def resolved(key: str, build: Callable[[], FiniteModule], s_max: int, t_max: int) -> Resolution:
    """Minimal resolution of build() through (s_max, t_max), computed once per key and window"""
    slot = (key, s_max, t_max)
    with _lock:
        if slot in _resolutions:
            return _resolutions[slot]
        gate = _pending.setdefault(slot, threading.Lock())
    with gate:
        with _lock:
            if slot in _resolutions:
                return _resolutions[slot]
        r = minimal_resolution(build(), s_max, t_max, name=key)
        with _lock:
            _resolutions[slot] = r
    return r


def clear_resolutions() -> None:
    with _lock:
        _resolutions.clear()
        _pending.clear()


# Importing the case modules fills the registry
from . import (  # noqa: E402,F401
    algebra_cases, bo2_cases, chart_cases, dual_cases, product_cases, projective_cases,
)
