"""
Command-line surface: validate, resolve, chart, verify, suite and convert

Exit codes: 0 on success, 1 when a computation fails or finds a failure, 2 when the
arguments or an input file cannot be read. Nothing is written when the exit code is 2.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from charts.charts import compare, parse_chart
from charts.exceptions import ChartError
from charts.render import FORMATS, render
from gmod.exceptions import ModuleDefinitionError, UnknownModuleError
from gmod.formats import format_module, import_classical, load_module, resolve_path
from gmod.library import paper_module
from gmod.modules import FiniteModule, restrict, validate
from papersuite.exceptions import UnknownCaseError
from resolve.complexes import load_complex, verify_complex
from resolve.extchart import ext_chart
from resolve.resolution import minimal_resolution
from steenrod.exceptions import Ext2Error, NotationError

logger = logging.getLogger(__name__)

INPUT_ERRORS = (FileNotFoundError, ModuleDefinitionError, UnknownModuleError, NotationError, ChartError,
                UnknownCaseError)


class UsageError(Exception):
    """Bad arguments; argparse exits instead of raising, so the parser turns that into this"""

    def __init__(self, status: int):
        super().__init__(f'usage error (exit {status})')
        self.status = status


class Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise UsageError(status)


def build_parser() -> Parser:
    parser = Parser(prog='ext2', description='Ext over A(1) and A(2): modules, resolutions and charts')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=Parser)

    p = commands.add_parser('validate', help='Check that a module definition is an A(n)-module')
    p.add_argument('--module', required=True, help='Module file or library name')
    p.add_argument('--algebra', choices=['A1', 'A2'], help='Restrict to this subalgebra first')
    p.add_argument('--out', help='Write the report here')

    p = commands.add_parser('resolve', help='Minimal resolution and Ext chart of a module')
    p.add_argument('--module', required=True, help='Module file or library name')
    p.add_argument('--algebra', required=True, choices=['A1', 'A2'])
    p.add_argument('--max-s', required=True, type=int)
    p.add_argument('--max-t', required=True, type=int)
    p.add_argument('--format', choices=FORMATS, default='json')
    p.add_argument('--width', type=int, help='Stems per band of ASCII output')
    p.add_argument('--threads', type=int)
    p.add_argument('--out', help='Write the chart here')

    p = commands.add_parser('chart', help='Render a chart JSON file, or compare it with another')
    p.add_argument('chart', help='Chart JSON file')
    p.add_argument('--format', choices=FORMATS, default='ascii')
    p.add_argument('--width', type=int, help='Stems per band of ASCII output')
    p.add_argument('--compare', help='Second chart JSON file; report differing cells')
    p.add_argument('--out', help='Write the output here')

    p = commands.add_parser('verify', help='Check d o d = 0 and exactness of a complex')
    p.add_argument('--complex', required=True, help='Complex file')
    p.add_argument('--t-max', required=True, type=int)
    p.add_argument('--out', help='Write the report here')

    p = commands.add_parser('suite', help='Run verification cases')
    p.add_argument('--case', action='append', dest='cases', help='Case id; repeat for several (default: all)')
    p.add_argument('--threads', type=int)
    p.add_argument('--out', help='Write the report here')

    p = commands.add_parser('convert', help='Convert a classical module definition to the module format')
    p.add_argument('--module', required=True, help='Classical definition file')
    p.add_argument('--algebra', required=True, choices=['A1', 'A2', 'A'])
    p.add_argument('--out', help='Write the module file here')
    return parser


def load_input_module(reference: str, algebra: Optional[str] = None) -> FiniteModule:
    """A module file, or a library module such as L, M7 or HP1(40)"""
    try:
        m = load_module(reference)
    except FileNotFoundError:
        try:
            m = paper_module(Path(reference).stem if reference.endswith('.mod') else reference)
        except UnknownModuleError:
            raise FileNotFoundError(f'No module file or library module named {reference}') from None
    if algebra and m.algebra != algebra:
        m = restrict(m, algebra)
    return m


def _dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=str) + '\n'


def _validate(args) -> tuple:
    report = validate(load_input_module(args.module, args.algebra))
    return (0 if report['valid'] else 1), _dump(report)


def _resolve(args) -> tuple:
    m = load_input_module(args.module, args.algebra)
    r = minimal_resolution(m, args.max_s, args.max_t, threads=args.threads, name=m.name)
    logger.info('Resolved %s through s <= %d, t <= %d in %.1fs', m.name, args.max_s, args.max_t, r.seconds)
    return 0, render(ext_chart(r), args.format, args.width)


def _chart(args) -> tuple:
    chart = parse_chart(resolve_path(args.chart).read_text())
    if args.compare:
        other = parse_chart(resolve_path(args.compare).read_text())
        report = compare(chart, other)
        return (0 if report['equal'] else 1), _dump(report)
    return 0, render(chart, args.format, args.width)


def _verify(args) -> tuple:
    report = verify_complex(load_complex(args.complex), args.t_max)
    return (0 if report['valid'] else 1), _dump(report)


def _suite(args) -> tuple:
    from papersuite.serializers import report_json
    from papersuite.services import run_all
    result = run_all(args.threads, args.cases)
    return (0 if result['success'] else 1), _dump(report_json(result))


def _convert(args) -> tuple:
    path = resolve_path(args.module)
    m = import_classical(path.read_text(), algebra=args.algebra, name=path.stem)
    return 0, format_module(m)


HANDLERS = {
    'validate': _validate,
    'resolve': _resolve,
    'chart': _chart,
    'verify': _verify,
    'suite': _suite,
    'convert': _convert,
}


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return e.status
    logger.info('ext2 %s', args.command)
    try:
        status, text = HANDLERS[args.command](args)
    except INPUT_ERRORS as e:
        sys.stderr.write(f'ext2 {args.command}: {e}\n')
        return 2
    except Ext2Error as e:
        logger.error('ext2 %s failed: %s', args.command, e)
        sys.stderr.write(f'ext2 {args.command}: {e}\n')
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return status
