import string
from typing import NamedTuple
from typing import Tuple
from typing import Union

from zxweb.diagrams import VertexType

ColorTypeRGB = Tuple[int, int, int]
ColorType = Union[ColorTypeRGB, 'RenderColor', str]

__all__ = ['RenderColor', 'ColorType', 'vertex_colors']


class RenderColor(NamedTuple):
    """fill color of a rendered vertex

    >>> RenderColor.from_hex("#ccffcc")
    Color(204, 255, 204)
    """
    red: int
    green: int
    blue: int

    def is_valid(self) -> bool:
        return all(0 <= value <= 255 for value in self)

    def to_rgb(self) -> ColorTypeRGB:
        return self.red, self.green, self.blue

    def to_hex(self) -> str:
        r, g, b = self.to_rgb()
        return f"#{r:02x}{g:02x}{b:02x}"

    @classmethod
    def from_hex(cls, hex_color: str) -> 'RenderColor':
        if (
            not isinstance(hex_color, str)
            or len(hex_color) != 7
            or hex_color[0] != "#"
            or any(c not in string.hexdigits for c in hex_color[1:])
        ):
            raise ValueError(f"requires a hexcolor #000000 - #ffffff, got {hex_color!r}")
        return cls(*(int(hex_color[i:i+2], 16) for i in (1, 3, 5)))

    @classmethod
    def from_any(cls, color: ColorType) -> 'RenderColor':
        if isinstance(color, str):
            return cls.from_hex(color)
        c = cls(*color)
        if not c.is_valid():
            raise ValueError(f"rgb values must be in 0..255, got {tuple(color)!r}")
        return c

    def __repr__(self) -> str:
        return f"Color{self.to_rgb()}"


def vertex_colors() -> dict:
    """fill colors per vertex type from the current settings"""
    from zxweb import settings
    return {
        VertexType.Z: RenderColor.from_hex(settings.dot_z_color),
        VertexType.X: RenderColor.from_hex(settings.dot_x_color),
        VertexType.H: RenderColor.from_hex(settings.dot_h_color),
    }
