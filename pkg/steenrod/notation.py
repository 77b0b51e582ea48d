"""
Text notation for Steenrod algebra elements

    Sq(5,1)          admissible monomial Sq^5 Sq^1 (any word is Adem-reduced)
    M(0,1)           Milnor basis element Sq(0,1)
    Sq^{6,3,1}       composite shorthand, also Sq^4, Sq5Sq1, Sq^4Sq^2
    1, 0             unit and zero
Terms are joined by '+'; juxtaposed factors are multiplied.
"""

import re
from typing import List

from .algebra import (
    MilnorElement, SteenrodElement, adem_reduce, milnor_degree, multiply, normalize_tag, strip,
)
from .exceptions import NotationError

_FACTOR = re.compile(
    r'\s*(?:'
    r'(?P<adm>Sq\((?P<adm_args>[\d,\s]*)\))'
    r'|(?P<mil>M\((?P<mil_args>[\d,\s]*)\))'
    r'|(?P<brace>Sq\^\{(?P<brace_args>[\d,\s]+)\})'
    r'|(?P<caret>Sq\^?(?P<caret_arg>\d+))'
    r'|(?P<unit>1)'
    r')'
)


def _integers(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    return [int(part) for part in text.split(',')]


def _parse_term(text: str, algebra: str) -> SteenrodElement:
    text = text.strip()
    if not text:
        raise NotationError('Empty term')
    position = 0
    result = SteenrodElement.unit(algebra)
    while position < len(text):
        match = _FACTOR.match(text, position)
        if not match or match.end() == position:
            raise NotationError(f"Cannot parse '{text[position:]}'")
        position = match.end()
        if match.group('adm') is not None:
            factor = adem_reduce(_integers(match.group('adm_args')), 'A')
        elif match.group('mil') is not None:
            r = strip(_integers(match.group('mil_args')))
            factor = MilnorElement('A', frozenset([r]), milnor_degree(r)).to_admissible()
        elif match.group('brace') is not None:
            factor = adem_reduce(_integers(match.group('brace_args')), 'A')
        elif match.group('caret') is not None:
            factor = adem_reduce([int(match.group('caret_arg'))], 'A')
        else:
            factor = SteenrodElement.unit('A')
        result = multiply(result, factor)
        while position < len(text) and text[position].isspace():
            position += 1
    return result


def parse_element(text: str, algebra: str = 'A') -> SteenrodElement:
    """Parse a '+'-separated sum; the result is checked against the algebra tag"""
    algebra = normalize_tag(algebra)
    text = text.strip()
    if text == '0':
        return SteenrodElement.zero(algebra)
    total = SteenrodElement.zero('A')
    for part in text.split('+'):
        term = _parse_term(part, 'A')
        if total.terms and term.terms and term.degree != total.degree:
            raise NotationError(f"Inhomogeneous sum '{text}'")
        total = total + term
    return SteenrodElement.from_terms(algebra, total.terms, total.degree)


def format_element(x) -> str:
    return str(x)
