from __future__ import annotations

import argparse
import functools
import sys
from contextlib import redirect_stdout
from logging.config import dictConfig
from pathlib import Path

from zxweb._cli import DirectoryType
from zxweb._cli import PhaseType
from zxweb._cli import argument
from zxweb._cli import compare_files
from zxweb._cli import config_print_defaults
from zxweb._cli import config_print_settings
from zxweb._cli import input_errors
from zxweb._cli import print_protocol
from zxweb._cli import print_tensor
from zxweb._cli import simplify_file
from zxweb._cli import subcommand
from zxweb._cli import write_output

parser = argparse.ArgumentParser(
    prog="python -m zxweb" if Path(sys.argv[0]).name == "__main__.py" else None,
    description="""\
 ███████╗██╗  ██╗██╗    ██╗███████╗██████╗
 ╚══███╔╝╚██╗██╔╝██║    ██║██╔════╝██╔══██╗
   ███╔╝  ╚███╔╝ ██║ █╗ ██║█████╗  ██████╔╝
  ███╔╝   ██╔██╗ ██║███╗██║██╔══╝  ██╔══██╗
 ███████╗██╔╝ ██╗╚███╔███╔╝███████╗██████╔╝
 ╚══════╝╚═╝  ╚═╝ ╚══╝╚══╝ ╚══════╝╚═════╝ """,
    epilog="#### spiders, wires and the rules that rewrite them ####",
    formatter_class=argparse.RawDescriptionHelpFormatter,
)
subparsers = parser.add_subparsers(dest="cmd", title="zxweb command")
subcommand = functools.partial(subcommand, parent=subparsers)
parser.add_argument('--version', action='store_true', help="print zxweb version")
parser.add_argument('-v', '--verbose', action='store_true', help="log debug messages")


def main(commandline=None):
    """main command line argument handling"""
    try:
        args = parser.parse_args(commandline)
    except UnicodeEncodeError:
        # recover in case terminal does not support unicode
        parser.description = "ZXWEB"
        args = parser.parse_args(commandline)

    if args.cmd is None:
        if args.version:
            from zxweb import __version__
            print(f"{__version__}")
            return 0
        else:
            parser.print_help()
            return 1
    else:
        from zxweb._config import settings
        lvl = 'INFO'
        if args.verbose:
            lvl = 'DEBUG'
        if settings.cli_force_log_level_error:
            lvl = 'ERROR'
        dictConfig({
            'version': 1,
            'disable_existing_loggers': False,
            'handlers': {
                'console': {
                    'level': 'DEBUG',
                    'class': 'logging.StreamHandler',
                },
            },
            "loggers": {
                'zxweb': {
                    'level': lvl,
                    'handlers': ['console'],
                },
            },
        })
        try:
            return args.cmd_func(args)
        except input_errors() as err:
            print(f"ERROR: {err}", file=sys.stderr)
            return 2


@subcommand(
    argument('-l', '--list', action='store_true', help="list the zxweb config"),
    argument('--default', action='store_true', help="default instead of current config"),
    argument(
        '-o', '--output',
        action='store',
        type=DirectoryType(), dest='output',
        help="directory where configuration is written to"
    ),
    argument('--force', action='store_true', help="force overwrite existing config"),
    argument('--search-tree', action='store_true', help="list all locations searched for config"),
)
def config(args, subparser):
    """handle zxweb configuration"""
    from zxweb._config import ZXWEB_CONFIG_FILENAME
    from zxweb._config import get_searchtree

    if not (args.list or args.search_tree):
        print(subparser.format_help())
        return 0

    if args.search_tree:
        print(f"zxweb is scanning these dirs for '{ZXWEB_CONFIG_FILENAME}':")
        for idx, location in enumerate(get_searchtree()):
            print(f"{idx}.", location)
        return 0

    if args.default:
        config_print = config_print_defaults
    else:
        config_print = config_print_settings

    if args.output is None:
        config_print()
    else:
        out_fn = args.output / ZXWEB_CONFIG_FILENAME
        mode = "x" if not args.force else "w"
        # write to file
        try:
            with out_fn.open(mode) as f:
                with redirect_stdout(f):
                    config_print()
        except FileExistsError:
            print(f"ERROR: file {out_fn} exists! use --force to overwrite")
            return 1
    return 0


@subcommand(
    argument('path', nargs='?', default=None, help="diagram (.json) or circuit (.qc) file"),
    argument('--entries', action='store_true', help="list nonzero entries by basis label"),
)
def eval_(args, subparser):
    """print the tensor of a diagram"""
    if not args.path:
        print(subparser.format_help())
        return 0
    print_tensor(args.path, entries=args.entries)
    return 0


@subcommand(
    argument('path', nargs='?', default=None, help="diagram (.json) or circuit (.qc) file"),
    argument('--max-steps', type=int, default=None, help="rewrite step budget"),
    argument('--colour-change', action='store_true', default=None, help="allow the colour change rule"),
    argument('--trace', type=Path, default=None, help="write the rewrite trace to this file"),
    argument('--verify', action='store_true', help="replay the trace and check it with the tensor oracle"),
    argument('-o', '--output', type=Path, default=None, help="write the simplified diagram here"),
)
def simplify(args, subparser):
    """simplify a diagram with the rewrite rules"""
    from zxweb.files import serialize_diagram
    from zxweb.simplify import ReplayDivergenceError
    from zxweb.simplify import dumps_trace
    from zxweb.simplify import verify_trace
    from zxweb.tensors import VerdictKind

    if not args.path:
        print(subparser.format_help())
        return 0
    if args.max_steps is not None and args.max_steps < 1:
        print("ERROR: --max-steps must be at least 1", file=sys.stderr)
        return 2

    result, trace = simplify_file(args.path, args.max_steps, args.colour_change)
    write_output(serialize_diagram(result), args.output)
    if args.trace is not None:
        write_output(dumps_trace(trace), args.trace)

    if args.verify:
        try:
            verdict = verify_trace(trace)
        except ReplayDivergenceError as err:
            print(f"ERROR: {err}", file=sys.stderr)
            return 1
        print(f"# verified: {verdict}", file=sys.stderr)
        if verdict.kind is VerdictKind.DISTINCT:
            return 1
    return 0


@subcommand(
    argument('path_a', nargs='?', default=None, help="first diagram file"),
    argument('path_b', nargs='?', default=None, help="second diagram file"),
    argument('--exact', action='store_true', help="require equality including the scalar"),
)
def equiv(args, subparser):
    """compare two diagrams with the tensor oracle"""
    if not (args.path_a and args.path_b):
        print(subparser.format_help())
        return 0
    verdict = compare_files(args.path_a, args.path_b, exact=args.exact)
    print(verdict)
    return 0 if verdict.is_equivalent else 1


@subcommand(
    argument('path', nargs='?', default=None, help="diagram (.json) or circuit (.qc) file"),
    argument('-o', '--output', type=Path, default=None, help="write the doubled diagram here"),
)
def double(args, subparser):
    """pair a diagram with its conjugate"""
    from zxweb.doubling import double as double_diagram
    from zxweb.files import load_diagram
    from zxweb.files import serialize_diagram

    if not args.path:
        print(subparser.format_help())
        return 0
    write_output(serialize_diagram(double_diagram(load_diagram(args.path))), args.output)
    return 0


@subcommand(
    argument('path', nargs='?', default=None, help="diagram (.json) or circuit (.qc) file"),
    argument('-o', '--output', type=Path, default=None, help="write the DOT graph here"),
)
def render(args, subparser):
    """render a diagram as a Graphviz DOT graph"""
    from zxweb.files import load_diagram
    from zxweb.render import render_dot

    if not args.path:
        print(subparser.format_help())
        return 0
    write_output(render_dot(load_diagram(args.path)), args.output)
    return 0


def _protocol_names():
    from zxweb.protocols import PROTOCOLS
    return sorted(PROTOCOLS)


@subcommand(
    argument('name', nargs='?', default=None, choices=_protocol_names(), help="protocol to check"),
    argument('--alpha', type=PhaseType(), default=None, help="first measurement angle in units of pi"),
    argument('--beta', type=PhaseType(), default=None, help="second measurement angle in units of pi"),
    argument('--gamma', type=PhaseType(), default=None, help="third measurement angle in units of pi"),
)
def protocol(args, subparser):
    """build a protocol and verify its claims"""
    if not args.name:
        print(subparser.format_help())
        return 0
    params = {
        key: value
        for key, value in (("alpha", args.alpha), ("beta", args.beta), ("gamma", args.gamma))
        if value is not None
    }
    return 0 if print_protocol(args.name, params) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
