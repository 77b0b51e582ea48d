"""
Module definition files

    # comment
    algebra A2
    name M7
    basis e0:0 e4:4
    basis e6:6 e7:7
    sq 4 e0 = e4
    sq 2 e4 = e6
    sq 1 e6 = e7

Omitted actions are zero. The classical layout (generator count, then the degree list,
then rows `i r k j1 ... jk` meaning Sq^r x_i = x_j1 + ... + x_jk) is accepted by
import_classical.
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

from django.conf import settings

from steenrod.algebra import normalize_tag
from steenrod.exceptions import AlgebraMismatchError
from .exceptions import ModuleDefinitionError
from .modules import FiniteModule

logger = logging.getLogger(__name__)


def _strip_comment(line: str) -> str:
    return line.split('#', 1)[0].strip()


def parse_module(text: str, name: str = '') -> FiniteModule:
    algebra = None
    basis: List[Tuple[str, int]] = []
    arrows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(' ')
        rest = rest.strip()
        try:
            if keyword == 'algebra':
                algebra = normalize_tag(rest)
            elif keyword == 'name':
                name = rest
            elif keyword == 'basis':
                for item in rest.split():
                    label, _, degree = item.rpartition(':')
                    if not label:
                        raise ModuleDefinitionError(f"Basis entry '{item}' is not name:degree")
                    basis.append((label, int(degree)))
            elif keyword == 'sq':
                head, sep, tail = rest.partition('=')
                if not sep:
                    raise ModuleDefinitionError("Missing '='")
                degree, source = head.split()
                targets = [t.strip() for t in tail.split('+') if t.strip() and t.strip() != '0']
                arrows.append((int(degree), source, targets))
            else:
                raise ModuleDefinitionError(f"Unknown keyword '{keyword}'")
        except (ValueError, AlgebraMismatchError) as e:
            raise ModuleDefinitionError(f'Line {number}: {e}') from e
        except ModuleDefinitionError as e:
            raise ModuleDefinitionError(f'Line {number}: {e}') from e
    if algebra is None:
        raise ModuleDefinitionError('Missing algebra line')
    return FiniteModule.from_arrows(algebra, basis, arrows, name=name)


def format_module(m: FiniteModule) -> str:
    lines = [f'algebra {m.algebra}']
    if m.name:
        lines.append(f'name {m.name}')
    for d in sorted(m.dims):
        names = m.names[m.positions(d)]
        lines.append('basis ' + ' '.join(f'{n}:{d}' for n in names))
    for g, source, targets in m.arrows():
        lines.append(f'sq {g} {source} = ' + ' + '.join(targets))
    return '\n'.join(lines) + '\n'


def resolve_path(path: Union[str, Path]) -> Path:
    """Paths that do not exist as given are looked up in the data directory"""
    path = Path(path)
    if path.exists():
        return path
    candidate = Path(settings.EXT2_DATA_DIR) / path
    if candidate.exists():
        return candidate
    raise FileNotFoundError(f'No such module file: {path}')


def load_module(path: Union[str, Path]) -> FiniteModule:
    path = resolve_path(path)
    logger.debug('Reading module %s', path)
    return parse_module(path.read_text(), name=path.stem)


def save_module(m: FiniteModule, path: Union[str, Path]) -> None:
    Path(path).write_text(format_module(m))


def import_classical(text: str, algebra: str = 'A2', name: str = '') -> FiniteModule:
    """Read the generator-count / degree-list / action-row layout"""
    tokens = [_strip_comment(line) for line in text.splitlines()]
    lines = [line for line in tokens if line]
    if len(lines) < 2:
        raise ModuleDefinitionError('Expected a generator count and a degree list')
    try:
        count = int(lines[0].split()[0])
        degrees = [int(x) for x in lines[1].split()]
        if len(degrees) != count:
            raise ModuleDefinitionError(f'{count} generators but {len(degrees)} degrees')
        basis = [(f'x{i}', d) for i, d in enumerate(degrees)]
        arrows = []
        for line in lines[2:]:
            fields = [int(x) for x in line.split()]
            if len(fields) < 3:
                raise ModuleDefinitionError(f"Short action row '{line}'")
            i, r, k = fields[:3]
            targets = fields[3:3 + k]
            if len(targets) != k:
                raise ModuleDefinitionError(f"Action row '{line}' lists fewer than {k} targets")
            arrows.append((r, f'x{i}', [f'x{j}' for j in targets]))
    except ValueError as e:
        raise ModuleDefinitionError(str(e)) from e
    return FiniteModule.from_arrows(algebra, basis, arrows, name=name)
