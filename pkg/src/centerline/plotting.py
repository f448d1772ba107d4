"""Figures for success-rate comparisons."""

from __future__ import annotations

from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from centerline.evaluation import ScoreRow  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
}


def success_rate_figure(
    panels: Sequence[Tuple[str, Sequence[ScoreRow]]],
    strategies: Sequence[str],
    path: str,
) -> None:
    """Grouped bars of success rate per corpus row, one panel per setting."""
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(
            1, len(panels), figsize=(4.2 * len(panels), 3.2), sharey=True, squeeze=False
        )
        width = 0.8 / max(len(strategies), 1)
        for ax, (title, rows) in zip(axes[0], panels):
            x = np.arange(len(rows))
            for i, strategy in enumerate(strategies):
                rates = [
                    100 * float(r.rate(strategy)) if r.n else 0.0 for r in rows
                ]
                ax.bar(x + (i - (len(strategies) - 1) / 2) * width, rates, width,
                       label=strategy)
            ax.set_xticks(x)
            ax.set_xticklabels([r.label for r in rows])
            ax.set_ylim(0, 100)
            ax.set_title(title)
        axes[0][0].set_ylabel("success rate (%)")
        axes[0][-1].legend(loc="lower right", fontsize=7)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None} if path.endswith(".png") else None)
        plt.close(fig)
