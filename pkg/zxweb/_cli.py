import sys
from argparse import ArgumentTypeError
from functools import partial
from pathlib import Path
from typing import Callable
from typing import Optional
from typing import TextIO

# -- argparse improvements ---------------------------------------------


def subcommand(*arguments, parent):
    """decorator helper for commandline"""
    def decorator(func):
        fn = func.__name__.rstrip('_')
        started_via_m = Path(sys.argv[0]).name == "__main__.py"
        subparser = parent.add_parser(
            name=fn,
            prog=f"python -m zxweb {fn}" if started_via_m else f"zxweb {fn}",
            help=func.__doc__,
        )
        for args, kwargs in arguments:
            subparser.add_argument(*args, **kwargs)
        subparser.set_defaults(cmd_func=partial(func, subparser=subparser))
        return func
    return decorator


def argument(*args, **kwargs):
    """argument helper for subcommand"""
    return args, kwargs


class DirectoryType:
    """Directory parsing for argparse"""
    def __call__(self, cmd_input: str):
        p = Path(cmd_input)
        if p.is_dir():
            return p
        raise ArgumentTypeError(f"'{cmd_input}' is not a directory")


class PhaseType:
    """Phase parsing for argparse, in units of pi"""
    def __call__(self, cmd_input: str):
        from zxweb.phases import Phase
        try:
            return Phase.from_str(cmd_input)
        except ValueError:
            raise ArgumentTypeError(f"'{cmd_input}' is not a phase like '1/4'") from None


def input_errors() -> tuple:
    """exceptions reported as bad input (exit code 2)"""
    from zxweb.circuits import CircuitSyntaxError
    from zxweb.circuits import QubitIndexError
    from zxweb.diagrams import ArityMismatchError
    from zxweb.diagrams import DiagramValidationError
    from zxweb.files import DiagramFileError
    from zxweb.tensors import SizeGuardError

    return (
        CircuitSyntaxError,
        QubitIndexError,
        ArityMismatchError,
        DiagramValidationError,
        DiagramFileError,
        SizeGuardError,
        FileNotFoundError,
    )


def write_output(text: str, output: Optional[Path], force: bool = True) -> None:
    """write text to a file, or to stdout if no file is given"""
    if output is None:
        print(text, end="")
    else:
        mode = "w" if force else "x"
        with Path(output).open(mode) as f:
            f.write(text)


# -- config related commands -------------------------------------------

def config_print_settings():
    """print the current configuration"""
    from zxweb import settings
    from zxweb._config import to_toml

    print("# current zxweb configuration")
    print("# ===========================")
    print("# format: TOML")
    print(to_toml(settings))


def config_print_defaults():
    """print the default zxweb configuration"""
    if sys.version_info >= (3, 9):
        from importlib.resources import files

        def read_text(package, resource, encoding):
            return files(package).joinpath(resource).read_text(encoding=encoding)
    else:  # pragma: no cover
        from importlib.resources import read_text

    from zxweb._config import settings

    output = read_text(
        "zxweb",
        ".zxweb.defaults.toml",
        encoding=settings.ENCODING_FOR_DYNACONF
    )
    print(output)


# -- eval related commands ---------------------------------------------

def _format_complex(z: complex) -> str:
    re = 0.0 if abs(z.real) < 1e-12 else z.real
    im = 0.0 if abs(z.imag) < 1e-12 else z.imag
    return f"{re:+.6f}{im:+.6f}j"


def print_tensor(path, entries: bool = False, file: Optional[TextIO] = None):
    """print the tensor of a diagram file as a matrix (outputs x inputs)"""
    from zxweb.files import load_diagram
    from zxweb.tensors import evaluate
    from zxweb.tensors import labelled_entries

    d = load_diagram(path)
    t = evaluate(d)
    m, n = t.matrix.shape
    print(f"# tensor: {t.n_outputs} output(s), {t.n_inputs} input(s), matrix {m}x{n}", file=file)
    if entries:
        for key, value in labelled_entries(t).items():
            print(f"{key}  {_format_complex(value)}", file=file)
    else:
        for row in t.matrix:
            print(" ".join(_format_complex(z) for z in row), file=file)


# -- simplify related commands -----------------------------------------

def simplify_file(path, max_steps=None, enable_colour_change=None):
    """simplify a diagram file, returning the result and its trace

    A wire-kinds annotation on the input is carried over to the result.
    """
    from zxweb.doubling import DoubledDiagram
    from zxweb.files import load_annotated
    from zxweb.simplify import SimplifyConfig
    from zxweb.simplify import simplify

    overrides = {}
    if max_steps is not None:
        overrides["max_steps"] = max_steps
    if enable_colour_change is not None:
        overrides["enable_colour_change"] = enable_colour_change
    cfg = SimplifyConfig.from_settings(**overrides)
    cfg.validate()
    loaded = load_annotated(path)
    if isinstance(loaded, DoubledDiagram):
        result, trace = simplify(loaded.underlying, cfg)
        return DoubledDiagram(result, loaded.input_kinds, loaded.output_kinds), trace
    return simplify(loaded, cfg)


# -- equiv related commands --------------------------------------------

def compare_files(path_a, path_b, exact=False):
    """compare the tensors of two diagram files"""
    from zxweb.files import load_diagram
    from zxweb.tensors import compare
    from zxweb.tensors import evaluate

    a = evaluate(load_diagram(path_a))
    b = evaluate(load_diagram(path_b))
    if a.shape != b.shape:
        from zxweb.diagrams import ArityMismatchError
        raise ArityMismatchError(f"diagrams have different boundaries: {a.shape} vs {b.shape}")
    return compare(a, b, exact=exact)


# -- protocol related commands -----------------------------------------

def print_protocol(name: str, params: dict, printer: Callable[..., None] = print) -> bool:
    """run a protocol's checks, print one PASS/FAIL line each"""
    from zxweb.protocols import run_protocol

    checks = run_protocol(name, params)
    for check in checks:
        printer(str(check))
    passed = sum(c.passed for c in checks)
    printer(f"# {name}: {passed}/{len(checks)} checks passed")
    return passed == len(checks)
