# pipeline/plots.py
# Static SVG charts of V(tau); byte-reproducible (fixed hash salt, no date, glyphs as paths)

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from rejection.value_curve import ValueCurve  # noqa: E402

SVG_STYLE = {
    "svg.hashsalt": "valuereject",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
}


def _curve_series(curve: ValueCurve):
    points = [p for p in curve.points if not p.is_sentinel]
    return [p.tau for p in points], [p.total_value for p in points]


def _save(fig, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_value_curve(curve: ValueCurve, path: Path, title: str = "Total value by threshold") -> Path:
    with plt.rc_context(SVG_STYLE):
        fig, ax = plt.subplots(figsize=(6, 4))
        taus, values = _curve_series(curve)
        ax.plot(taus, values, color="tab:blue", linewidth=1.5, label="V(tau)")

        best = curve.argmax
        if best.is_sentinel:
            ax.axhline(best.total_value, color="tab:red", linestyle="--", linewidth=1, label="reject all")
        else:
            ax.plot([best.tau], [best.total_value], marker="D", color="tab:red", linestyle="none",
                    label=f"tau_O = {best.tau:.3f}")

        ax.set_xlabel("confidence threshold tau")
        ax.set_ylabel("total value V(tau)")
        ax.set_xlim(0.5, 1.0)
        ax.set_title(title)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path)


def plot_comparison(curves: Mapping[str, ValueCurve], path: Path) -> Path:
    with plt.rc_context(SVG_STYLE):
        fig, ax = plt.subplots(figsize=(6, 4))
        for model_id in sorted(curves):
            curve = curves[model_id]
            taus, values = _curve_series(curve)
            line, = ax.plot(taus, values, linewidth=1.5, label=model_id)
            best = curve.argmax
            if not best.is_sentinel:
                ax.plot([best.tau], [best.total_value], marker="D", color=line.get_color(), linestyle="none")

        ax.set_xlabel("confidence threshold tau")
        ax.set_ylabel("total value V(tau)")
        ax.set_xlim(0.5, 1.0)
        ax.set_title("Model comparison by total value")
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path)
