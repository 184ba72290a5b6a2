"""Text tables and a standalone SVG bar chart for benchmark records."""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from collections import defaultdict
from typing import Dict, Iterable, List

from .bench import AlphaEstimate, BenchRecord, mean_table

ORDER = {"STDM": 0, "SPDM": 1, "SHDM": 2}
COLORS = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"]


def format_mean_table(records: Iterable[BenchRecord]) -> str:
    means = mean_table(records)
    lines = [f"{'algorithm':<9} {'storage':<7} {'backend':<7} {'n':>9} {'mean [s]':>14}"]
    for (alg, storage, backend, n), t in sorted(means.items(), key=lambda kv: (kv[0][1:], ORDER.get(kv[0][0], 9))):
        lines.append(f"{alg:<9} {storage:<7} {backend:<7} {n:>9} {t:>14.6f}")
    return "\n".join(lines)


def format_alpha_table(alphas: Dict[tuple, AlphaEstimate]) -> str:
    lines = [f"{'algorithm':<9} {'storage':<7} {'backend':<7} {'n1':>9} {'n2':>9} {'alpha':>6} {'k':>12}"]
    for (alg, storage, backend), est in sorted(alphas.items(), key=lambda kv: (kv[0][1:], ORDER.get(kv[0][0], 9))):
        lines.append(f"{alg:<9} {storage:<7} {backend:<7} {int(est.n1):>9} {int(est.n2):>9} "
                     f"{est.alpha:>6.2f} {est.k_fit:>12.4g}")
    return "\n".join(lines)


def format_ratio_table(ratios: Dict[tuple, Dict[str, float]]) -> str:
    lines = [f"{'storage':<7} {'backend':<7} {'n':>9} {'HD:TD':>7} {'PD:TD':>7} {'TD:TD':>7}"]
    for (storage, backend, n), r in sorted(ratios.items()):
        lines.append(f"{storage:<7} {backend:<7} {n:>9} {r['SHDM']:>7.3f} {r['SPDM']:>7.3f} {r['STDM']:>7.3f}")
    return "\n".join(lines)


def render_svg(records: Iterable[BenchRecord], title: str = "Mean wall-clock time per solve") -> str:
    """Grouped bar chart: one group per n, one bar per series, log-scaled heights."""
    means = mean_table(records)
    combos = sorted({(s, b) for (_, s, b, _) in means})
    multi = len(combos) > 1

    def label(alg, storage, backend):
        return f"{alg} ({storage}/{backend})" if multi else alg

    series = sorted({(a, s, b) for (a, s, b, _) in means}, key=lambda k: (k[1:], ORDER.get(k[0], 9)))
    sizes = sorted({n for (*_, n) in means})
    if not sizes:
        raise ValueError("no records to plot")

    lo = math.floor(math.log10(min(means.values())))
    if math.log10(min(means.values())) - lo < 0.1:
        lo -= 1  # keep the shortest bar visible
    hi = math.ceil(math.log10(max(means.values())))
    if hi == lo:
        hi += 1

    width, height = 120 + len(sizes) * (30 + 22 * len(series)) + 180, 420
    left, right, top, bottom = 80, width - 180, 40, height - 60
    plot_h = bottom - top

    def y_of(t):
        return bottom - (math.log10(t) - lo) / (hi - lo) * plot_h

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(width),
                     height=str(height), viewBox=f"0 0 {width} {height}")
    ET.SubElement(svg, "title").text = title
    ET.SubElement(svg, "rect", x="0", y="0", width=str(width), height=str(height), fill="white")
    txt = ET.SubElement(svg, "text", x=str(width // 2), y="22", attrib={"text-anchor": "middle",
                        "font-family": "sans-serif", "font-size": "15"})
    txt.text = title

    axes = ET.SubElement(svg, "g", attrib={"stroke": "black", "stroke-width": "1"})
    ET.SubElement(axes, "line", x1=str(left), y1=str(bottom), x2=str(right), y2=str(bottom))
    ET.SubElement(axes, "line", x1=str(left), y1=str(top), x2=str(left), y2=str(bottom))
    ticks = ET.SubElement(svg, "g", attrib={"font-family": "sans-serif", "font-size": "11"})
    for e in range(lo, hi + 1):
        y = y_of(10.0 ** e)
        ET.SubElement(ticks, "line", x1=str(left - 4), y1=f"{y:.1f}", x2=str(right), y2=f"{y:.1f}",
                      stroke="#dddddd")
        t = ET.SubElement(ticks, "text", x=str(left - 8), y=f"{y + 4:.1f}", attrib={"text-anchor": "end"})
        t.text = f"1e{e}"
    ylab = ET.SubElement(svg, "text", x="18", y=str((top + bottom) // 2), attrib={
        "text-anchor": "middle", "font-family": "sans-serif", "font-size": "12",
        "transform": f"rotate(-90 18 {(top + bottom) // 2})"})
    ylab.text = "time [s] (log scale)"
    xlab = ET.SubElement(svg, "text", x=str((left + right) // 2), y=str(height - 15), attrib={
        "text-anchor": "middle", "font-family": "sans-serif", "font-size": "12"})
    xlab.text = "N (matrix rows)"

    bars = ET.SubElement(svg, "g", attrib={"class": "bars"})
    x = left + 20
    for n in sizes:
        group_start = x
        for k, key in enumerate(series):
            t = means.get((key[0], key[1], key[2], n))
            if t is not None:
                y = y_of(t)
                bar = ET.SubElement(bars, "rect", attrib={
                    "class": "bar", "x": f"{x:.1f}", "y": f"{y:.1f}", "width": "20",
                    "height": f"{bottom - y:.1f}", "fill": COLORS[k % len(COLORS)]})
                ET.SubElement(bar, "title").text = f"{label(*key)}, n={n}: {t:.6g} s"
            x += 22
        gl = ET.SubElement(svg, "text", x=f"{(group_start + x) / 2:.1f}", y=str(bottom + 18), attrib={
            "text-anchor": "middle", "font-family": "sans-serif", "font-size": "11"})
        gl.text = str(n)
        x += 30

    legend = ET.SubElement(svg, "g", attrib={"font-family": "sans-serif", "font-size": "11"})
    for k, key in enumerate(series):
        y = top + 16 * k
        ET.SubElement(legend, "rect", x=str(right + 15), y=str(y), width="10", height="10",
                      fill=COLORS[k % len(COLORS)])
        t = ET.SubElement(legend, "text", x=str(right + 30), y=str(y + 9))
        t.text = label(*key)

    return ET.tostring(svg, encoding="unicode") + "\n"


def series_present(records: Iterable[BenchRecord]) -> List[tuple]:
    groups = defaultdict(int)
    for r in records:
        groups[(r.n, r.algorithm, r.storage, r.backend)] += 1
    return sorted(groups)
