import lzma
from functools import partial
from pathlib import Path
from typing import Union

__all__ = [
    'read_text_from_path',
    'strip_compression_suffix',
]

PathLike = Union[str, Path]


def strip_compression_suffix(path: PathLike) -> Path:
    """'circuit.qc.xz' -> 'circuit.qc'"""
    path = Path(path)
    if path.suffix == ".xz":
        return path.with_suffix("")
    return path


def read_text_from_path(path: PathLike) -> str:
    """read a text file, transparently decompressing '.xz' files"""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(str(path))

    if path.name.endswith(".xz"):
        ctx = partial(lzma.open, path, 'rt', encoding='utf-8')
    else:
        ctx = partial(path.open, 'r', encoding='utf-8')

    with ctx() as fobj:
        return fobj.read()
