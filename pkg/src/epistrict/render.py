"""Grid pictures of epistemic states and sharp measurements.

Phase space at one degree of freedom is drawn as a d x d grid: columns index
the position value left to right, rows index the momentum value top to
bottom.  Two degrees of freedom nest the same picture: the outer grid is
indexed by (q1, p1) and every outer cell holds an inner d x d grid indexed by
(q2, p2), so a point (q1, p1, q2, p2) lands in column q1*d + q2 and row
p1*d + p2.  ASCII output marks support cells with ``#`` (states) or one glyph
per outcome (measurements); SVG output shades the same cells, one hue per
outcome.

Both backends are pure functions of the canonical object — same input, same
bytes — so renderings can be diffed and pinned in tests.  Sizes beyond what
fits a terminal (d not in {2, 3, 5}, n > 2) and rational phase spaces (no
finite grid) are refused rather than approximated.
"""

from __future__ import annotations

from typing import Callable, Union

from .epistemic import EpistemicState, SharpMeasurement
from .symplectic import PhaseSpace, UnsupportedOperation

SUPPORT_GLYPH = "#"
EMPTY_GLYPH = "."
OUTCOME_GLYPHS = "0123456789abcdefghijklmnopqrstuvwxyz"

CELL_PX = 24  # side of one grid cell in SVG output

RENDERABLE_MODULI = (2, 3, 5)


def _check_renderable(space: PhaseSpace) -> None:
    if not space.field.is_finite:
        raise UnsupportedOperation(
            "rational phase spaces have no finite grid to draw")
    if space.field.modulus not in RENDERABLE_MODULI:
        raise UnsupportedOperation(
            f"no grid layout for modulus {space.field.modulus}; "
            f"supported moduli are {RENDERABLE_MODULI}")
    if space.n > 2:
        raise UnsupportedOperation(
            f"no grid layout for {space.n} degrees of freedom (at most 2)")


def _point_at(space: PhaseSpace, row: int, col: int) -> tuple:
    """Phase-space point shown in the given grid cell."""
    d = space.field.modulus
    if space.n == 1:
        return (col, row)
    q1, q2 = divmod(col, d)
    p1, p2 = divmod(row, d)
    return (q1, p1, q2, p2)


def _grid_side(space: PhaseSpace) -> int:
    d = space.field.modulus
    return d if space.n == 1 else d * d


# ---------------------------------------------------------------------------
# ASCII
# ---------------------------------------------------------------------------


def _ascii_grid(space: PhaseSpace, glyph_at: Callable[[int, int], str]) -> str:
    d = space.field.modulus
    side = _grid_side(space)
    nested = space.n == 2
    lines = []
    for row in range(side):
        if nested and row > 0 and row % d == 0:
            lines.append("+".join(["-" * d] * d))
        chars = []
        for col in range(side):
            if nested and col > 0 and col % d == 0:
                chars.append("|")
            chars.append(glyph_at(row, col))
        lines.append("".join(chars))
    return "\n".join(lines) + "\n"


def ascii_state(state: EpistemicState) -> str:
    """Support of the state as a glyph grid (``#`` inside, ``.`` outside)."""
    _check_renderable(state.space)
    support = state.support()

    def glyph(row: int, col: int) -> str:
        point = _point_at(state.space, row, col)
        return SUPPORT_GLYPH if support.contains(point) else EMPTY_GLYPH

    return _ascii_grid(state.space, glyph)


def ascii_measurement(meas: SharpMeasurement) -> str:
    """Outcome cells of the measurement, one glyph per outcome label."""
    _check_renderable(meas.space)
    labels = meas.outcomes()
    if len(labels) > len(OUTCOME_GLYPHS):
        raise UnsupportedOperation(
            f"{len(labels)} outcomes exceed the {len(OUTCOME_GLYPHS)}-glyph alphabet")
    index = {label: i for i, label in enumerate(labels)}

    def glyph(row: int, col: int) -> str:
        point = _point_at(meas.space, row, col)
        return OUTCOME_GLYPHS[index[meas.label_of(point)]]

    return _ascii_grid(meas.space, glyph)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def _outcome_fill(i: int, n_outcomes: int) -> str:
    hue = (360 * i) // max(n_outcomes, 1)
    return f"hsl({hue},70%,60%)"


def _svg_grid(space: PhaseSpace, fill_at: Callable[[int, int], str]) -> str:
    d = space.field.modulus
    side = _grid_side(space)
    size = side * CELL_PX
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n',
    ]
    for row in range(side):
        for col in range(side):
            parts.append(
                f'<rect x="{col * CELL_PX}" y="{row * CELL_PX}" '
                f'width="{CELL_PX}" height="{CELL_PX}" '
                f'fill="{fill_at(row, col)}" stroke="#999999" stroke-width="1"/>\n')
    if space.n == 2:
        for k in range(1, d):
            at = k * d * CELL_PX
            parts.append(
                f'<line x1="{at}" y1="0" x2="{at}" y2="{size}" '
                f'stroke="#000000" stroke-width="2"/>\n')
            parts.append(
                f'<line x1="0" y1="{at}" x2="{size}" y2="{at}" '
                f'stroke="#000000" stroke-width="2"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def svg_state(state: EpistemicState) -> str:
    """Support of the state as a shaded SVG grid (deterministic bytes)."""
    _check_renderable(state.space)
    support = state.support()
    filled = _outcome_fill(0, 1)

    def fill(row: int, col: int) -> str:
        point = _point_at(state.space, row, col)
        return filled if support.contains(point) else "#ffffff"

    return _svg_grid(state.space, fill)


def svg_measurement(meas: SharpMeasurement) -> str:
    """Outcome cells of the measurement, one hue per outcome label."""
    _check_renderable(meas.space)
    labels = meas.outcomes()
    index = {label: i for i, label in enumerate(labels)}

    def fill(row: int, col: int) -> str:
        point = _point_at(meas.space, row, col)
        return _outcome_fill(index[meas.label_of(point)], len(labels))

    return _svg_grid(meas.space, fill)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def render(obj: Union[EpistemicState, SharpMeasurement], fmt: str = "ascii") -> str:
    """Render a state or measurement in the requested format."""
    if fmt not in ("ascii", "svg"):
        raise ValueError(f"unknown format {fmt!r}; expected 'ascii' or 'svg'")
    if isinstance(obj, EpistemicState):
        return ascii_state(obj) if fmt == "ascii" else svg_state(obj)
    if isinstance(obj, SharpMeasurement):
        return ascii_measurement(obj) if fmt == "ascii" else svg_measurement(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
