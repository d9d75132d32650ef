"""SVG snapshot of one trial: anchors, true positions, estimates and error links."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .geom import Point, distance
from .sim import Deployment, ScenarioConfig, TrialResult, error_metric, generate_deployment, localize_deployment

PANEL = 400  # px per panel side
MARGIN = 40
ANCHOR_COLORS = ("#1f5fbf", "#7fa7e0")  # long range, short range
TRUE_COLOR = "#222222"
EST_COLOR = "#c0392b"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Panel:
    def __init__(self, cfg: ScenarioConfig, x0: float):
        self.sx = PANEL / cfg.field_width
        self.sy = PANEL / cfg.field_height
        self.x0 = x0
        self.y0 = MARGIN

    def xy(self, p: Point) -> tuple[float, float]:
        # SVG y grows downwards
        return self.x0 + p.x * self.sx, self.y0 + PANEL - p.y * self.sy


def _panel(cfg: ScenarioConfig, dep: Deployment, trial: TrialResult, method: str, x0: float, error: float) -> list[str]:
    pn = _Panel(cfg, x0)
    title = f"{method} (DOI={cfg.doi:g}, error={error:.4f})"
    out = [
        f'<g id="{method.lower()}">',
        f'<text x="{_fmt(x0 + PANEL / 2)}" y="{MARGIN - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<rect x="{x0}" y="{MARGIN}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#999"/>',
    ]
    links, marks = [], []
    for rec in trial.records:
        tx, ty = pn.xy(rec.true_position)
        est = rec.rla if method == "RLA" else rec.ca
        if est is None:
            marks.append(f'<circle cx="{_fmt(tx)}" cy="{_fmt(ty)}" r="2.5" fill="none" stroke="{TRUE_COLOR}"/>')
            continue
        marks.append(f'<circle cx="{_fmt(tx)}" cy="{_fmt(ty)}" r="2.5" fill="{TRUE_COLOR}"/>')
        ex, ey = pn.xy(est.point)
        if distance(rec.true_position, est.point) > 0.0:
            links.append(
                f'<line x1="{_fmt(tx)}" y1="{_fmt(ty)}" x2="{_fmt(ex)}" y2="{_fmt(ey)}" '
                f'stroke="{EST_COLOR}" stroke-width="1" stroke-dasharray="3,2"/>'
            )
        marks.append(
            f'<path d="M{_fmt(ex - 3)},{_fmt(ey - 3)} L{_fmt(ex + 3)},{_fmt(ey + 3)} '
            f'M{_fmt(ex - 3)},{_fmt(ey + 3)} L{_fmt(ex + 3)},{_fmt(ey - 3)}" '
            f'stroke="{EST_COLOR}" stroke-width="1.5" class="estimate"/>'
        )
    for a in dep.anchors:
        ax, ay = pn.xy(a.position)
        color = ANCHOR_COLORS[0] if a.nominal_range >= cfg.r_max else ANCHOR_COLORS[1]
        marks.append(
            f'<polygon points="{_fmt(ax)},{_fmt(ay - 6)} {_fmt(ax - 5)},{_fmt(ay + 4)} {_fmt(ax + 5)},{_fmt(ay + 4)}" '
            f'fill="{color}" class="anchor"/>'
        )
    out.extend(links)
    out.extend(marks)
    out.append("</g>")
    return out


def render_trial(cfg: ScenarioConfig, dep: Deployment, trial: TrialResult) -> str:
    """Two side-by-side panels (RLA left, CA right) for one localized deployment."""
    try:
        summary = error_metric([trial], cfg.r_max)
        e_rla, e_ca = summary.e_rla, summary.e_ca
    except ValueError:
        e_rla = e_ca = float("nan")
    width = 3 * MARGIN + 2 * PANEL
    height = 2 * MARGIN + PANEL
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>Trial {dep.trial_index}: RLA error={e_rla:.4f}, CA error={e_ca:.4f} "
        f"(NA={len(dep.anchors)}, DOI={cfg.doi:g})</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    lines += _panel(cfg, dep, trial, "RLA", MARGIN, e_rla)
    lines += _panel(cfg, dep, trial, "CA", 2 * MARGIN + PANEL, e_ca)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def snapshot_svg(cfg: ScenarioConfig, trial_index: int) -> str:
    dep = generate_deployment(cfg, trial_index)
    trial = localize_deployment(dep, cfg.doi, cfg.test_points, cfg.doi_aware)
    return render_trial(cfg, dep, trial)
