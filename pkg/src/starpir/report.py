"""Report emission: exact-fraction strings, human tables, CSV, figures.

Every rate is an exact fraction and is always emitted as "num/den";
floating point never appears in machine output.  Figures are rendered
with the Agg backend straight to files.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

from .code import INFINITE
from .pir import PirAnalysis
from .search import ParetoEntry


def frac_str(x) -> str | None:
    """Exact "num/den" rendering; distances may be integers or infinite."""
    if x is None:
        return None
    if x == INFINITE:
        return "inf"
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def dist_value(d):
    """JSON value for a distance: int, "inf", or None."""
    if d is None:
        return None
    if d == INFINITE:
        return "inf"
    return int(d)


def analysis_payload(res: PirAnalysis, collusion_bound: int | None = None) -> dict:
    out = {
        "n": res.n,
        "storage_rate": frac_str(res.storage_rate),
        "failed_server_ratio": frac_str(res.failed_server_ratio),
        "t": res.privacy,
        "rate_basic": frac_str(res.rate_basic),
        "rate_transitive": frac_str(res.rate_transitive),
        "defect": res.defect,
        "star_dimension": res.star_dimension,
        "d_storage": dist_value(res.d_storage),
        "d_star": dist_value(res.d_star),
        "d_dual_retrieval": dist_value(res.d_dual_retrieval),
        "notes": list(res.notes),
    }
    if collusion_bound is not None:
        out["collusion_bound"] = collusion_bound
    return out


def _row(label: str, value) -> str:
    return f"  {label:<24} {value if value is not None else '(unknown)'}"


def analysis_table(res: PirAnalysis, collusion_bound: int | None = None) -> str:
    lines = ["star product PIR scheme analysis",
             _row("servers (n)", res.n),
             _row("storage rate", frac_str(res.storage_rate)),
             _row("failed-server ratio f", frac_str(res.failed_server_ratio)),
             _row("privacy t", res.privacy),
             _row("basic rate", frac_str(res.rate_basic)),
             _row("transitive rate", frac_str(res.rate_transitive)),
             _row("scheme defect", res.defect),
             _row("dim(star)", res.star_dimension)]
    if collusion_bound is not None:
        lines.append(_row("collusion upper bound", collusion_bound))
    for note in res.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def front_payload(entries: list[ParetoEntry]) -> list[dict]:
    return [{
        "t": e.privacy,
        "rate": frac_str(e.rate),
        "rate_basic": frac_str(e.rate_basic),
        "rate_transitive": frac_str(e.rate_transitive),
        "defect": e.defect,
        "multiplicity": e.multiplicity,
        "descriptor": e.descriptor,
    } for e in entries]


FRONT_HEADER = ["t", "rate", "rate_basic", "rate_transitive", "defect",
                "multiplicity", "descriptor"]


def front_csv_rows(entries: list[ParetoEntry]) -> list[list]:
    import json

    return [[e.privacy, frac_str(e.rate), frac_str(e.rate_basic),
             frac_str(e.rate_transitive),
             e.defect if e.defect is not None else "",
             e.multiplicity, json.dumps(e.descriptor)]
            for e in entries]


def front_table(entries: list[ParetoEntry]) -> str:
    lines = ["Pareto front over (privacy t, retrieval rate)",
             f"  {'t':>4}  {'rate':>10}  {'defect':>6}  {'ties':>4}  candidate"]
    for e in entries:
        kind = "?" if e.descriptor is None else next(
            k for k in e.descriptor if k != "declared_distance")
        lines.append(f"  {e.privacy:>4}  {frac_str(e.rate):>10}  "
                     f"{e.defect if e.defect is not None else '-':>6}  "
                     f"{e.multiplicity:>4}  {kind}")
    return "\n".join(lines)


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def plot_front(entries: list[ParetoEntry], path: str | Path,
               title: str = "retrieval code Pareto front") -> None:
    """Step plot of the (t, rate) front, saved to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ts = [e.privacy for e in entries]
    rates = [float(e.rate) for e in entries]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(ts, rates, where="post", color="tab:blue", alpha=0.6)
    ax.scatter(ts, rates, color="tab:blue", zorder=3)
    for e in entries:
        ax.annotate(frac_str(e.rate), (e.privacy, float(e.rate)),
                    textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_xlabel("colluding servers tolerated (t)")
    ax.set_ylabel("retrieval rate")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_weight_distribution(counts, path: str | Path,
                             title: str = "weight distribution") -> None:
    """Stem plot of nonzero weight counts, saved to a file.

    `counts` is either a full A_0..A_n list or a (weight, count) mapping.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if isinstance(counts, dict):
        pairs = sorted(counts.items())
    else:
        pairs = [(w, c) for w, c in enumerate(counts) if c and w]
    ws = [w for w, _ in pairs]
    cs = [c for _, c in pairs]
    fig, ax = plt.subplots(figsize=(6, 4))
    markerline, stemlines, _ = ax.stem(ws, cs)
    plt.setp(markerline, color="tab:red")
    plt.setp(stemlines, color="tab:red", alpha=0.6)
    for w, c in pairs:
        ax.annotate(str(c), (w, c), textcoords="offset points",
                    xytext=(0, 5), ha="center", fontsize=8)
    ax.set_xlabel("weight")
    ax.set_ylabel("codewords")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
