#!/usr/bin/env python3
"""Generates the raw SVG fixture corpus and its sample metadata.

Output (deterministic for a given --seed):
  <out>/raw/NNN_<theme>.svg   editor-style SVG files
  <out>/samples.jsonl         captioned samples, several per file: file,
                              prompt, desc, image, and group_images /
                              group_descs for top-level groups that
                              survive cleaning

Files imitate editor exports: declarations, comments, DOCTYPE, metadata,
editor namespaces, defs, inline styles, named/rgb colours, absolute and
relative path data with long decimals. Content stays inside the viewBox
so a square re-canvas shows the same pixels.
"""

import argparse
import json
import math
import random
import re
from pathlib import Path

CANVASES = [
    (24, 24), (32, 32), (48, 48), (64, 64), (100, 100), (128, 128),
    (200, 200), (256, 256), (512, 512), (100, 50), (200, 120), (64, 96),
    (300, 200), (120, 160),
]

NAMED = ["red", "navy", "teal", "orange", "gold", "purple", "olive", "maroon",
         "steelblue", "tomato", "seagreen", "slategray", "crimson", "black"]

CAPTIONS_PER_FILE = 3
SUBJECTS = ["icon", "badge", "logo", "emblem", "sticker", "glyph", "button", "sign"]
SHAPES = {
    "path": "curved outline", "circle": "round dot", "rect": "rounded box",
    "ellipse": "oval", "polygon": "star-like polygon", "line": "thin line",
    "polyline": "zigzag", "text": "label", "gradient": "smooth gradient",
}


class Gen:
    def __init__(self, rng, w, h, vx=0.0, vy=0.0):
        self.r = rng
        self.w, self.h = w, h
        self.vx, self.vy = vx, vy
        self.m = 0.15 * min(w, h)
        self.defs = []
        self.ids = 0
        self.used = set()

    # -- numbers and colours
    def num(self, v):
        places = self.r.choice([0, 1, 2, 3, 4, 6])
        s = f"{v:.{places}f}"
        if "." in s:
            s = s.rstrip("0").rstrip(".")
        return "0" if s in ("-0", "") else s

    def x(self):
        return self.vx + self.r.uniform(self.m, self.w - self.m)

    def y(self):
        return self.vy + self.r.uniform(self.m, self.h - self.m)

    def small(self, frac=0.12):
        return self.r.uniform(0.03, frac) * min(self.w, self.h)

    def colour(self):
        k = self.r.random()
        if k < 0.45:
            return "#%06x" % self.r.randrange(0x1000000)
        if k < 0.6:
            return "#%03x" % self.r.randrange(0x1000)
        if k < 0.8:
            return self.r.choice(NAMED)
        return "rgb(%d, %d, %d)" % tuple(self.r.randrange(256) for _ in range(3))

    def new_id(self, prefix):
        self.ids += 1
        return f"{prefix}{self.ids}"

    # -- paint: attributes or style
    def paint(self, stroke_ok=True, allow_gradient=True, allow_none=True):
        parts = []
        fill = self.colour()
        if allow_gradient and self.r.random() < 0.2:
            fill = f"url(#{self.gradient()})"
        elif allow_none and self.r.random() < 0.1:
            fill = "none"
        parts.append(("fill", fill))
        if stroke_ok and (fill == "none" or self.r.random() < 0.35):
            parts.append(("stroke", self.colour()))
            parts.append(("stroke-width", self.num(self.r.uniform(0.5, 0.04 * min(self.w, self.h) + 1))))
            if self.r.random() < 0.4:
                parts.append(("stroke-linecap", self.r.choice(["butt", "round", "square"])))
        if self.r.random() < 0.15:
            parts.append(("opacity", self.num(self.r.uniform(0.3, 0.95))))
        if self.r.random() < 0.3:
            return ' style="' + ";".join(f"{k}:{v}" for k, v in parts) + '"'
        return "".join(f' {k}="{v}"' for k, v in parts)

    def gradient(self):
        gid = self.new_id("grad")
        stops = []
        n = self.r.randint(2, 4)
        for i in range(n):
            off = i / (n - 1)
            off_s = self.r.choice([self.num(off), f"{round(off * 100)}%"])
            colour = self.colour()
            if self.r.random() < 0.5:
                stops.append(f'<stop offset="{off_s}" stop-color="{colour}"/>')
            else:
                op = "" if self.r.random() < 0.7 else f";stop-opacity:{self.num(self.r.uniform(0.4, 1))}"
                stops.append(f'<stop offset="{off_s}" style="stop-color:{colour}{op}"/>')
        radial = self.r.random() < 0.4
        attrs = ""
        user = self.r.random() < 0.35
        if user:
            attrs += ' gradientUnits="userSpaceOnUse"'
            if radial:
                attrs += f' cx="{self.num(self.x())}" cy="{self.num(self.y())}" r="{self.num(self.small(0.3))}"'
            else:
                attrs += (f' x1="{self.num(self.x())}" y1="{self.num(self.y())}"'
                          f' x2="{self.num(self.x())}" y2="{self.num(self.y())}"')
        else:
            if radial:
                if self.r.random() < 0.5:
                    attrs += ' cx="50%" cy="50%" r="50%"'
                if self.r.random() < 0.3:
                    attrs += ' fx="0.3" fy="0.35"'
            else:
                k = self.r.random()
                if k < 0.4:
                    attrs += ' x1="0%" y1="0%" x2="0%" y2="100%"'
                elif k < 0.7:
                    attrs += f' x1="{self.num(self.r.random())}" y1="0" x2="1" y2="{self.num(self.r.random())}"'
        if self.r.random() < 0.2:
            attrs += f' gradientTransform="rotate({self.num(self.r.uniform(-60, 60))} 0.5 0.5)"'
        tag = "radialGradient" if radial else "linearGradient"
        if self.r.random() < 0.25:
            # Stops live on a base gradient; this one links to it.
            base = self.new_id("base")
            self.defs.append(f'<{tag} id="{base}">' + "".join(stops) + f"</{tag}>")
            self.defs.append(f'<{tag} id="{gid}"{attrs} xlink:href="#{base}"/>')
        else:
            self.defs.append(f'<{tag} id="{gid}"{attrs}>' + "".join(stops) + f"</{tag}>")
        return gid

    # -- geometry
    def path_data(self, commands=None):
        r = self.r
        cx, cy = self.x(), self.y()
        start = (cx, cy)
        out = [f"M{self.num(cx)} {self.num(cy)}" if r.random() < 0.7 else f"M {self.num(cx)},{self.num(cy)}"]
        ops = commands or [r.choice("LHVCSQTAZ") for _ in range(r.randint(3, 9))]
        for op in ops:
            rel = r.random() < 0.4
            letter = op.lower() if rel else op
            if op == "Z":
                out.append(letter)
                cx, cy = start
                continue
            if op == "L":
                nx, ny = self.x(), self.y()
                args = [nx, ny]
            elif op == "H":
                nx, ny = self.x(), cy
                args = [nx]
            elif op == "V":
                nx, ny = cx, self.y()
                args = [ny]
            elif op == "C":
                nx, ny = self.x(), self.y()
                args = [self.x(), self.y(), self.x(), self.y(), nx, ny]
            elif op == "S":
                nx, ny = self.x(), self.y()
                args = [self.x(), self.y(), nx, ny]
            elif op == "Q":
                nx, ny = self.x(), self.y()
                args = [self.x(), self.y(), nx, ny]
            elif op == "T":
                nx, ny = self.x(), self.y()
                args = [nx, ny]
            elif op == "A":
                d = self.m * 0.8
                nx = min(max(cx + r.uniform(-d, d), self.vx + self.m), self.vx + self.w - self.m)
                ny = min(max(cy + r.uniform(-d, d), self.vy + self.m), self.vy + self.h - self.m)
                rx = r.uniform(0.2, 0.45) * d
                ry = r.uniform(0.2, 0.45) * d
                args = [rx, ry, r.choice([0, 15, 30, 45, 90]), r.randint(0, 1), r.randint(0, 1), nx, ny]
            coords = list(args)
            if rel:
                if op == "H":
                    coords = [nx - cx]
                elif op == "V":
                    coords = [ny - cy]
                elif op == "A":
                    coords = coords[:5] + [nx - cx, ny - cy]
                else:
                    coords = [v - (cx if i % 2 == 0 else cy) for i, v in enumerate(coords)]
            if op == "A":
                text = " ".join([self.num(coords[0]), self.num(coords[1]), str(coords[2]),
                                 str(coords[3]), str(coords[4]), self.num(coords[5]), self.num(coords[6])])
            else:
                text = " ".join(self.num(v) for v in coords)
            if r.random() < 0.3:
                text = text.replace(" -", "-")
            out.append(letter + text)
            cx, cy = nx, ny
        sep = "" if r.random() < 0.5 else " "
        return sep.join(out)

    def element(self, kind):
        r = self.r
        if kind == "path":
            return f'<path d="{self.path_data()}"{self.paint()}/>'
        if kind == "circle":
            rad = self.small()
            return (f'<circle cx="{self.num(self.x())}" cy="{self.num(self.y())}" r="{self.num(rad)}"'
                    f"{self.paint()}/>")
        if kind == "ellipse":
            return (f'<ellipse cx="{self.num(self.x())}" cy="{self.num(self.y())}" rx="{self.num(self.small())}"'
                    f' ry="{self.num(self.small())}"{self.paint()}/>')
        if kind == "rect":
            x0, y0 = self.x(), self.y()
            w = r.uniform(0.05, 0.9) * (self.vx + self.w - self.m - x0) + 0.5
            h = r.uniform(0.05, 0.9) * (self.vy + self.h - self.m - y0) + 0.5
            extra = f' rx="{self.num(min(w, h) * 0.2)}"' if r.random() < 0.3 else ""
            return (f'<rect x="{self.num(x0)}" y="{self.num(y0)}" width="{self.num(w)}" height="{self.num(h)}"'
                    f"{extra}{self.paint()}/>")
        if kind in ("polygon", "polyline"):
            pts = []
            for _ in range(r.randint(3, 7)):
                pts.append(f"{self.num(self.x())},{self.num(self.y())}")
            sep = r.choice([" ", "  ", "\n      "])
            paint = self.paint(allow_gradient=kind == "polygon")
            if kind == "polyline" and "fill" not in paint:
                paint += ' fill="none"'
            if kind == "polyline" and "stroke=" not in paint and "stroke:" not in paint:
                paint += f' stroke="{self.colour()}"'
            return f'<{kind} points="{sep.join(pts)}"{paint}/>'
        if kind == "line":
            cap = f' stroke-linecap="{r.choice(["round", "square", "butt"])}"' if r.random() < 0.5 else ""
            return (f'<line x1="{self.num(self.x())}" y1="{self.num(self.y())}" x2="{self.num(self.x())}"'
                    f' y2="{self.num(self.y())}" stroke="{self.colour()}"'
                    f' stroke-width="{self.num(r.uniform(0.5, 0.03 * min(self.w, self.h) + 1))}"{cap}/>')
        if kind == "text":
            words = r.sample(["Hello", "SVG", "Icon", "Draw", "Vector", "Art", "Logo", "Ok"], 2)
            size = min(self.w, self.h) * r.uniform(0.08, 0.14)
            body = words[0] + " " + words[1]
            if r.random() < 0.4:
                body = f"{words[0]} <tspan>{words[1]}</tspan>"
            fam = ' font-family="DejaVu Sans"' if r.random() < 0.4 else ""
            y = self.vy + self.h - self.m
            x = self.vx + self.m
            return (f'<text x="{self.num(x)}" y="{self.num(y)}" font-size="{self.num(size)}"{fam}'
                    f"{self.paint(stroke_ok=False, allow_gradient=False, allow_none=False)}>{body}</text>")
        raise ValueError(kind)

    def transform(self):
        cx = self.vx + self.w / 2
        cy = self.vy + self.h / 2
        k = self.r.random()
        if k < 0.35:
            return f"rotate({self.num(self.r.uniform(-20, 20))} {self.num(cx)} {self.num(cy)})"
        if k < 0.6:
            d = self.m * 0.3
            return f"translate({self.num(self.r.uniform(-d, d))} {self.num(self.r.uniform(-d, d))})"
        if k < 0.8:
            s = self.r.uniform(0.7, 0.95)
            return (f"translate({self.num(cx)} {self.num(cy)}) scale({self.num(s)})"
                    f" translate({self.num(-cx)} {self.num(-cy)})")
        a = math.radians(self.r.uniform(-15, 15))
        s = self.r.uniform(0.8, 0.95)
        c, si = s * math.cos(a), s * math.sin(a)
        e = cx - c * cx + si * cy
        f = cy - si * cx - c * cy
        return "matrix(" + " ".join(f"{v:.5f}".rstrip("0").rstrip(".") for v in (c, si, -si, c, e, f)) + ")"


KINDS = ["path", "circle", "rect", "ellipse", "polygon", "line", "polyline", "text"]


def build(index, rng):
    w, h = CANVASES[index % len(CANVASES)]
    square = w == h
    vx = vy = 0.0
    if index % 11 == 5:
        vx, vy = 10.0, -5.0
    g = Gen(rng, w, h, vx, vy)

    theme = KINDS[index % len(KINDS)]
    if index % 9 == 4:
        theme = "gradient"
    body = []
    groups = []
    n = rng.randint(3, 9)
    flavour = rng.random()
    for i in range(n):
        kind = theme if (i == 0 or rng.random() < 0.4) and theme != "gradient" else rng.choice(KINDS)
        el = g.element(kind)
        if theme == "gradient" and i < 2 and kind not in ("line", "polyline", "text"):
            gid = g.gradient()
            el = _set_fill(el, f"url(#{gid})")
        if square and rng.random() < 0.15:
            el = el.replace("/>", f' transform="{g.transform()}"/>', 1) if el.endswith("/>") else el
        body.append(el)

    # Every path command at least once in the corpus, many times over.
    if index % 7 == 0:
        body.append(f'<path d="{g.path_data(list("LHVCSQTAZ"))}"{g.paint()}/>')

    # Group structure: styled groups survive cleaning, bare ones do not.
    if flavour < 0.45 and len(body) >= 3:
        k = rng.randint(2, min(4, len(body)))
        chunks = _split(body, k, rng)
        body = []
        for chunk in chunks:
            attrs = ""
            if rng.random() < 0.8:
                attrs += f' fill="{g.colour()}"' if rng.random() < 0.3 else ""
                attrs += f' opacity="{g.num(rng.uniform(0.6, 0.95))}"' if rng.random() < 0.5 else ""
                if square and rng.random() < 0.5:
                    attrs += f' transform="{g.transform()}"'
                attrs += f' id="{g.new_id("layer")}"'
            if attrs.strip().startswith("id=") and rng.random() < 0.5:
                attrs += ' stroke-linecap="round"'
            body.append(f"<g{attrs}>" + "".join(chunk) + "</g>")
            if re.sub(r' id="[^"]*"', "", attrs).strip():
                groups.append(len(chunk))
    elif flavour < 0.6:
        body = ["<g><g>" + "".join(body) + "</g></g>"]

    invisible = index % 13 == 6
    if invisible:
        body.append(f'<circle cx="{g.num(g.x())}" cy="{g.num(g.y())}" r="{g.num(g.small())}" opacity="0"/>')
        body.append(f'<rect x="{g.num(g.x())}" y="{g.num(g.y())}" width="2" height="2" fill="none"/>')

    return w, h, vx, vy, theme, g, body, groups


def _set_fill(el, fill):
    el = re.sub(r' style="[^"]*"', "", el)
    el = re.sub(r' fill="[^"]*"', "", el)
    tail = "/>" if el.endswith("/>") else ">"
    head = el[: -len(tail)] if tail == "/>" else el[: el.index(">")]
    rest = "" if tail == "/>" else el[el.index(">"):]
    if tail == "/>":
        return head + f' fill="{fill}"/>'
    return head + f' fill="{fill}"' + rest


def _split(items, k, rng):
    cuts = sorted(rng.sample(range(1, len(items)), k - 1))
    out, last = [], 0
    for c in cuts + [len(items)]:
        out.append(items[last:c])
        last = c
    return out


def document(index, rng):
    w, h, vx, vy, theme, g, body, groups = build(index, rng)
    style = rng.random()
    lines = []
    if style < 0.7:
        lines.append('<?xml version="1.0" encoding="UTF-8" standalone="no"?>')
    if style < 0.35:
        lines.append("<!-- Generator: Adobe Illustrator 24.1.2, SVG Export Plug-In . SVG Version: 6.00 Build 0)  -->")
        lines.append('<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">')
    root = ['<svg xmlns="http://www.w3.org/2000/svg"', 'xmlns:xlink="http://www.w3.org/1999/xlink"']
    inkscape = 0.35 <= style < 0.7
    if inkscape:
        root.append('xmlns:inkscape="http://www.inkscape.org/namespaces/inkscape"')
        root.append('xmlns:sodipodi="http://sodipodi.sourceforge.net/DTD/sodipodi-0.dtd"')
        root.append('xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"')
        root.append('xmlns:dc="http://purl.org/dc/elements/1.1/"')
        root.append('xmlns:cc="http://creativecommons.org/ns#"')
        root.append('inkscape:version="1.2.2 (b0a8486541, 2022-12-01)"')
        root.append(f'sodipodi:docname="drawing{index}.svg"')
    root.append('version="1.1"')
    if style < 0.35:
        root.append(f'id="Layer_{index}" x="0px" y="0px"')
    vb = f"{g.num(vx) if vx else 0} {g.num(vy) if vy else 0} {w} {h}"
    k = rng.random()
    if vx or vy or k < 0.6:
        root.append(f'viewBox="{vb}"')
        if k < 0.3:
            root.append(f'width="{w}px" height="{h}px"')
        elif k < 0.45:
            root.append(f'width="{w * 2}" height="{h * 2}"')
    else:
        root.append(f'width="{w}" height="{h}"')
    if style < 0.35 and rng.random() < 0.5:
        root.append(f'enable-background="new 0 0 {w} {h}"')
    lines.append(" ".join(root) + ">")
    if rng.random() < 0.3:
        lines.append(f"  <title>{theme} {index}</title>")
    if rng.random() < 0.2:
        lines.append(f"  <desc>Created with an editor; {theme} artwork number {index}.</desc>")
    if inkscape:
        lines.append(
            '  <sodipodi:namedview id="base" pagecolor="#ffffff" bordercolor="#666666" '
            'inkscape:zoom="2.8" inkscape:cx="64" inkscape:cy="64" inkscape:current-layer="layer1"/>')
        lines.append(
            "  <metadata><rdf:RDF><cc:Work rdf:about=\"\"><dc:format>image/svg+xml</dc:format>"
            "<dc:type rdf:resource=\"http://purl.org/dc/dcmitype/StillImage\"/></cc:Work></rdf:RDF></metadata>")
    if rng.random() < 0.25:
        lines.append("  <style>.unused-st0{fill:#123456}.unused-st1{stroke:#654321}</style>")
    defs = list(g.defs)
    if rng.random() < 0.3:
        defs.append(f'<linearGradient id="{g.new_id("spare")}"><stop offset="0" stop-color="#fff"/>'
                    f'<stop offset="1" stop-color="#000"/></linearGradient>')
    if rng.random() < 0.35:
        defs.append(f'<path id="SVGID_{g.new_id("")}_" d="{g.path_data()}"/>')
    if rng.random() < 0.15:
        defs.append(f'<clipPath id="{g.new_id("clip")}"><rect width="{w}" height="{h}"/></clipPath>')
    elif rng.random() < 0.15:
        defs.append(f'<clipPath id="{g.new_id("clip")}"><path d="M0 0H{w}V{h}H0Z"/></clipPath>')
    if defs:
        lines.append("  <defs>")
        lines.extend("    " + d for d in defs)
        lines.append("  </defs>")
    if rng.random() < 0.3:
        lines.append("  <!-- artwork -->")
    for el in body:
        if rng.random() < 0.15:
            el = el.replace("<path ", '<path class="cls-1" ', 1)
        if inkscape and rng.random() < 0.3:
            el = el.replace(" ", ' inkscape:label="shape" ', 1)
        lines.append("  " + el)
    lines.append("</svg>")
    return "\n".join(lines) + "\n", theme, w, h, groups


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    ap.add_argument("--count", type=int, default=120)
    ap.add_argument("--seed", type=int, default=20241)
    args = ap.parse_args()

    out = Path(args.out)
    raw = out / "raw"
    raw.mkdir(parents=True, exist_ok=True)
    for old in raw.glob("*.svg"):
        old.unlink()
    samples = []
    for i in range(args.count):
        rng = random.Random(args.seed * 1000 + i)
        text, theme, w, h, groups = document(i, rng)
        name = f"{i:03d}_{theme}.svg"
        (raw / name).write_text(text, encoding="utf-8")
        shape = SHAPES[theme]
        # Several captions per drawing, as in multi-caption datasets.
        for v, subject in enumerate(rng.sample(SUBJECTS, CAPTIONS_PER_FILE)):
            sample = {
                "file": f"raw/{name}",
                "prompt": f"a {shape} {subject}",
                "desc": (f"A {w} by {h} {subject} drawn mostly with a {shape}, "
                         f"using flat colours and simple geometric primitives"),
                "image": f"images/{i:03d}.png",
            }
            if groups:
                sample["group_images"] = [
                    {"group": k + 1, "image": f"images/{i:03d}_g{k + 1}.png"} for k in range(len(groups))]
                sample["group_descs"] = [
                    f"part {k + 1} of the {subject}, {n} shape{'s' if n > 1 else ''}"
                    for k, n in enumerate(groups)]
            samples.append(sample)
    with open(out / "samples.jsonl", "w", encoding="utf-8") as f:
        for s in samples:
            f.write(json.dumps(s) + "\n")


if __name__ == "__main__":
    main()
