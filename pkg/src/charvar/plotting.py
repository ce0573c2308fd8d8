"""Report figures, rendered off-screen to image files."""

from collections import Counter
from pathlib import Path

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    return path


def plot_completeness(cert, path, title="Relation span vs kernel"):
    """Kernel dimension and relation-span dimension per degree."""
    degrees = [c.degree for c in cert.checks]
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    ax.plot(degrees, [c.kernel_dim for c in cert.checks], "o-", label="kernel")
    ax.plot(degrees, [c.span_dim for c in cert.checks], "x--", label="relation multiples")
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_yscale("symlog")
    ax.set_title(title)
    ax.legend()
    return _save(fig, path)


def plot_davenport(rows, path):
    """Davenport constants against their lower and upper bounds.

    ``rows`` are dicts with keys m, N, d, lower, upper.
    """
    labels = [f"({r['m']},{r['N']})" for r in rows]
    xs = range(len(rows))
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    ax.plot(xs, [r["upper"] for r in rows], "v:", label="upper bound")
    ax.plot(xs, [r["d"] for r in rows], "o-", label="d(m,N)")
    ax.plot(xs, [r["lower"] for r in rows], "^:", label="N(m-1)+1")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels)
    ax.set_xlabel("(m, N)")
    ax.set_ylabel("length")
    ax.legend()
    return _save(fig, path)


def plot_zero_sum_lengths(multisets, path, title=None):
    """Histogram of multiset lengths."""
    counts = Counter(len(ms) for ms in multisets)
    lengths = sorted(counts)
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    ax.bar(lengths, [counts[k] for k in lengths])
    ax.set_xlabel("length")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    return _save(fig, path)
