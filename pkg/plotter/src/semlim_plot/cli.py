"""Command-line wrapper: semlim-plot --csv PATH --out PATH [--log-y] [--title T]."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .render import FigureSpec, SchemaError, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semlim-plot",
        description="Render a semlim sweep CSV as a multi-series figure",
    )
    parser.add_argument("--csv", type=Path, required=True, help="input sweep CSV")
    parser.add_argument("--out", type=Path, required=True, help="output image path")
    parser.add_argument("--log-y", action="store_true", help="logarithmic vertical axis")
    parser.add_argument("--title", default="", help="figure title")
    parser.add_argument("--x-label", default="threshold")
    parser.add_argument("--y-label", default="tail probability")
    parser.add_argument("--svg", action="store_true", help="write SVG instead of PNG")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=args.csv,
        output_image=args.out,
        title=args.title,
        x_label=args.x_label,
        y_label=args.y_label,
        log_y=args.log_y,
        image_format="svg" if args.svg else None,
    )
    try:
        result = render(spec)
    except (SchemaError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(result.output_image)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
