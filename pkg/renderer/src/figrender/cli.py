"""Command line entry point: draw figures from run record files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_NAMES, FigureSpec, render
from .records import RecordsError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figrender",
        description="Draw purity, entanglement, and decoherence-function figures from run records.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    draw = sub.add_parser("render", help="render one figure from a records CSV")
    draw.add_argument("--figure", required=True, choices=FIGURE_NAMES)
    draw.add_argument("--in", dest="records", required=True, type=Path, help="records CSV path")
    draw.add_argument("--out", dest="out", required=True, type=Path, help="output image path")
    args = parser.parse_args(argv)

    try:
        out = render(FigureSpec(records_path=args.records, figure=args.figure, out_path=args.out))
    except RecordsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot write figure: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
