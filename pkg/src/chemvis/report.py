"""File reports: delimited tables plus matplotlib renderings.

The comparison report mirrors the side-by-side entity view (green-shaded
rows for matches, deeper green for higher match frequency); the
recommendation report charts the blended scores.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# shade level -> fill; level 0 is the white background for non-matches
SHADE_HEX = {0: "#ffffff", 1: "#dcf2dc", 2: "#a9e3a9", 3: "#66c366"}

_COLUMNS = ("CID", "Name", "Formula", "Weight", "Freq")


def _cell(value) -> str:
    return "" if value is None else str(value)


def write_alignment_tsv(payload: dict, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter="\t")
        writer.writerow(
            ["key", "cid", "name", "formula", "weight", "freq_input", "freq_candidate", "matched", "shade"]
        )
        for row in payload["rows"]:
            entity = row["entity"]
            writer.writerow(
                [
                    entity["key"],
                    _cell(entity["cid"]),
                    entity["name"],
                    _cell(entity["formula"]),
                    _cell(entity["weight"]),
                    row["freq_input"],
                    row["freq_candidate"],
                    int(row["matched"]),
                    row["shade"],
                ]
            )


def _side_cells(rows: list[dict], side: str) -> tuple[list[list[str]], list[list[str]]]:
    frequency_key = f"freq_{side}"
    text, colors = [], []
    for row in rows:
        entity = row["entity"]
        present = row[frequency_key] >= 1
        if present:
            text.append(
                [
                    _cell(entity["cid"]),
                    entity["name"],
                    _cell(entity["formula"]),
                    _cell(entity["weight"]),
                    str(row[frequency_key]),
                ]
            )
            colors.append([SHADE_HEX[row["shade"]]] * len(_COLUMNS))
        else:
            text.append([""] * len(_COLUMNS))
            colors.append([SHADE_HEX[0]] * len(_COLUMNS))
    return text, colors


def write_alignment_figure(payload: dict, path: Path) -> None:
    rows = payload["rows"]
    n_rows = max(len(rows), 1)
    fig, axes = plt.subplots(1, 2, figsize=(14, 1.2 + 0.45 * n_rows))
    for ax, side, doc_id in (
        (axes[0], "input", payload["input"]),
        (axes[1], "candidate", payload["candidate"]),
    ):
        ax.set_axis_off()
        ax.set_title(f"{side}: {doc_id}", fontsize=10, loc="left")
        if not rows:
            continue
        text, colors = _side_cells(rows, side)
        table = ax.table(cellText=text, cellColours=colors, colLabels=_COLUMNS, loc="center")
        table.auto_set_font_size(False)
        table.set_fontsize(8)
        table.scale(1.0, 1.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_recommendations_tsv(payload: dict, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter="\t")
        writer.writerow(["rank", "id", "score", "entity_component", "text_component"])
        for rank, row in enumerate(payload["recommendations"], start=1):
            writer.writerow(
                [rank, row["id"], row["score"], row["entity_component"], row["text_component"]]
            )


def write_recommendations_figure(payload: dict, path: Path) -> None:
    recommendations = payload["recommendations"]
    fig, ax = plt.subplots(figsize=(9, 1.0 + 0.5 * max(len(recommendations), 1)))
    if recommendations:
        labels = [row["id"][:12] for row in recommendations][::-1]
        entity_parts = [
            payload["w_entity"] * row["entity_component"] for row in recommendations
        ][::-1]
        text_parts = [payload["w_text"] * row["text_component"] for row in recommendations][::-1]
        ax.barh(labels, entity_parts, color="#66c366", label="entity share")
        ax.barh(labels, text_parts, left=entity_parts, color="#7aa6d6", label="text share")
        ax.legend(loc="lower right", fontsize=8)
    ax.set_xlim(0, 1)
    ax.set_xlabel("blended score")
    ax.set_title(f"recommendations for {payload['input']} (k={payload['k']})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(
    compare_data: dict, recommendations_data: dict, out_dir: str | Path
) -> list[Path]:
    """Write the four report artifacts and return their paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [
        out / "alignment.tsv",
        out / "alignment.png",
        out / "recommendations.tsv",
        out / "recommendations.png",
    ]
    write_alignment_tsv(compare_data, written[0])
    write_alignment_figure(compare_data, written[1])
    write_recommendations_tsv(recommendations_data, written[2])
    write_recommendations_figure(recommendations_data, written[3])
    return written
