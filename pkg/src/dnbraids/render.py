"""Deterministic SVG drawings of noncrossing diagrams, vertical diagrams and braids."""

from __future__ import annotations

import math
from pathlib import Path

from .coxeter import format_cycles
from .diagrams import BlockKind, NCDiagram, Side, VerticalDiagram
from .mikado import CrossingData, rebuild_word

SIZE = 600
MID = SIZE / 2


def _f(v: float) -> str:
    return f"{v:.2f}"


def _document(body: list[str], title: str) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n'
        f"<title>{title}</title>\n"
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _text(x: float, y: float, label: str, size: int = 13) -> str:
    return (
        f'<text x="{_f(x)}" y="{_f(y)}" font-family="sans-serif" font-size="{size}" '
        f'text-anchor="middle" dominant-baseline="central">{label}</text>'
    )


def nc_svg(diagram: NCDiagram) -> str:
    lab = diagram.labeling
    n = lab.rank
    radius = 220.0

    def place(label: int, scale: float = 1.0) -> tuple[float, float]:
        if lab.is_center(label):
            return MID, MID
        px, py = lab.position[label]
        h = float(py) / n
        side = 0 if float(px) == 0 else math.copysign(1, float(px))
        x = side * math.sqrt(max(0.0, 1 - h * h))
        return MID + radius * scale * x, MID - radius * scale * h

    body = [f'<circle cx="{_f(MID)}" cy="{_f(MID)}" r="{_f(radius)}" fill="none" stroke="black"/>']
    for poly in diagram.polygons:
        if poly.kind is BlockKind.CENTER:
            continue
        pts = [place(a) for a in poly.cycle]
        d = "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in pts) + " Z"
        body.append(f'<path d="{d}" fill="#c8c8c8" fill-opacity="0.6" stroke="black" stroke-width="1.5"/>')
    for label in lab.rim:
        x, y = place(label)
        body.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3" fill="black"/>')
        tx, ty = place(label, 1.1)
        body.append(_text(tx, ty, str(label)))
    body.append(f'<circle cx="{_f(MID)}" cy="{_f(MID)}" r="3" fill="black"/>')
    body.append(_text(MID + 22, MID, f"±{lab.i1}"))
    return _document(body, f"NC diagram of {format_cycles(diagram.element)}")


def vertical_svg(vd: VerticalDiagram) -> str:
    line = vd.strandline
    top, bottom = 40.0, SIZE - 40.0
    step = (bottom - top) / (len(line) - 1)
    ypos = {a: top + k * step for k, a in enumerate(line)}
    body = [f'<line x1="{_f(MID)}" y1="{_f(top)}" x2="{_f(MID)}" y2="{_f(bottom)}" stroke="#999999"/>']
    for a in line:
        body.append(f'<circle cx="{_f(MID)}" cy="{_f(ypos[a])}" r="3" fill="black"/>')
        body.append(_text(MID - 260, ypos[a], str(a)))
    for ch in vd.chords:
        y0, y1 = ypos[ch.source], ypos[ch.target]
        sign = 1 if ch.side is Side.RIGHT else -1
        bulge = sign * (40 + 25 * ch.depth + 0.15 * abs(y1 - y0))
        d = f"M {_f(MID)} {_f(y0)} C {_f(MID + bulge)} {_f(y0)} {_f(MID + bulge)} {_f(y1)} {_f(MID)} {_f(y1)}"
        body.append(f'<path d="{d}" fill="none" stroke="black" stroke-width="1.5"/>')
        # arrowhead at the target end
        ax, ay = MID + 0.25 * bulge, y1
        body.append(f'<circle cx="{_f(ax)}" cy="{_f(ay)}" r="2" fill="black"/>')
    return _document(body, f"vertical diagram of {format_cycles(vd.element)}")


def braid_svg(data: CrossingData) -> str:
    """Strands run top to bottom; each letter of the rebuilt word is one row of crossings."""
    word = rebuild_word(data)
    n = data.rank
    width = 2 * n
    left, right = 60.0, SIZE - 60.0
    gap = (right - left) / (width - 1)
    rows = max(1, len(word.letters))
    top, bottom = 50.0, SIZE - 50.0
    row_h = (bottom - top) / rows
    labels = list(range(-n, 0)) + list(range(1, n + 1))
    body = []
    for k, a in enumerate(labels):
        body.append(_text(left + k * gap, top - 20, str(a), 11))
    under, over = [], []
    for r, letter in enumerate(word.letters):
        gen = abs(letter) - 1
        pairs = [(n - 1, n)] if gen == 0 else [(n + gen - 1, n + gen), (n - gen - 1, n - gen)]
        y0, y1 = top + r * row_h, top + (r + 1) * row_h
        busy = {p for pair in pairs for p in pair}
        for k in range(width):
            if k not in busy:
                x = left + k * gap
                under.append(f'<line x1="{_f(x)}" y1="{_f(y0)}" x2="{_f(x)}" y2="{_f(y1)}" stroke="black" stroke-width="2"/>')
        for a, b in pairs:
            xa, xb = left + a * gap, left + b * gap
            ym = (y0 + y1) / 2
            left_to_right = f"M {_f(xa)} {_f(y0)} C {_f(xa)} {_f(ym)} {_f(xb)} {_f(ym)} {_f(xb)} {_f(y1)}"
            right_to_left = f"M {_f(xb)} {_f(y0)} C {_f(xb)} {_f(ym)} {_f(xa)} {_f(ym)} {_f(xa)} {_f(y1)}"
            # positive letters carry the right-hand strand over, in both mirror gaps
            right_over = letter > 0
            top_path, low_path = (right_to_left, left_to_right) if right_over else (left_to_right, right_to_left)
            under.append(f'<path d="{low_path}" fill="none" stroke="black" stroke-width="2"/>')
            over.append(f'<path d="{top_path}" fill="none" stroke="white" stroke-width="7"/>')
            over.append(f'<path d="{top_path}" fill="none" stroke="black" stroke-width="2"/>')
        body += under + over
        under, over = [], []
    return _document(body, "symmetric braid")


def svg_text(target) -> str:
    if isinstance(target, NCDiagram):
        return nc_svg(target)
    if isinstance(target, VerticalDiagram):
        return vertical_svg(target)
    if isinstance(target, CrossingData):
        return braid_svg(target)
    raise TypeError(f"cannot render {type(target).__name__}")


def render_svg(target, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(svg_text(target), encoding="utf-8")
    return path
