"""Static SVG orbit diagrams.

Points of an orbit configuration are drawn on a circle, one colour per
label; an optional periodic-orbit trace is drawn as a chain of chords.
The pictures are decoration only and nothing reads them back.
"""

import math

COLOURS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]
SIZE = 360
RADIUS = 140


def _xy(pos, r=RADIUS):
    t = 2 * math.pi * float(pos)
    # counterclockwise from the top
    return SIZE / 2 - r * math.sin(t), SIZE / 2 - r * math.cos(t)


def orbit_diagram(config, trace=None, title=None):
    """SVG text for ``config`` (an OrbitConfig) and an optional point trace."""
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (SIZE, SIZE, SIZE, SIZE),
        '<rect width="100%" height="100%" fill="white"/>',
        '<circle cx="%d" cy="%d" r="%d" fill="none" stroke="#888"/>' % (SIZE // 2, SIZE // 2, RADIUS),
    ]
    if title:
        out.append('<text x="8" y="18" font-family="sans-serif" font-size="13">%s</text>'
                   % _escape(title))
    if trace:
        pts = [_xy(config.position(p) % 1) for p in trace]
        path = " ".join("%.2f,%.2f" % p for p in pts)
        out.append('<polyline points="%s" fill="none" stroke="#555" stroke-width="0.8" '
                   'stroke-opacity="0.6"/>' % path)
    seen = {}
    for label, pos in config.entries:
        depth = seen.get(pos, 0)
        seen[pos] = depth + 1
        x, y = _xy(pos, RADIUS + 10 * depth)
        colour = COLOURS[(label - 1) % len(COLOURS)]
        out.append('<circle cx="%.2f" cy="%.2f" r="4" fill="%s"/>' % (x, y, colour))
        tx, ty = _xy(pos, RADIUS + 10 * depth + 14)
        out.append('<text x="%.2f" y="%.2f" font-family="sans-serif" font-size="10" '
                   'text-anchor="middle" dominant-baseline="middle">%d</text>' % (tx, ty, label))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
