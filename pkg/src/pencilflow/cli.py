"""Command-line interface.

    pencilflow input.jpg -o sketch.png --seed 7 --frame-every 200 \
        --frames-dir frames/ --log sketch.log

Exit code 0 on success; 2 with a structured error message otherwise.
"""

import argparse
import sys

from .errors import PencilflowError
from .pipeline import Config, run_pipeline


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pencilflow",
        description="Render a photograph as a pencil sketch drawn stroke by stroke.",
    )
    parser.add_argument("input", help="input image (PNG or JPEG)")
    parser.add_argument("-o", "--output", required=True, help="output PNG path")
    parser.add_argument("--width", type=int, default=5, metavar="N",
                        help="stroke width in pixels (even values are bumped to odd)")
    parser.add_argument("--dirs", type=int, default=10, metavar="N",
                        help="number of stroke directions")
    parser.add_argument("--levels", type=int, default=12, metavar="N",
                        help="number of gray levels (8-16 suits most inputs)")
    parser.add_argument("--seed", type=int, default=0, metavar="N",
                        help="master random seed")
    parser.add_argument("--etf-radius", type=int, default=5, metavar="N",
                        help="flow-field smoothing radius")
    parser.add_argument("--etf-iters", type=int, default=2, metavar="N",
                        help="flow-field smoothing iterations")
    parser.add_argument("--frame-every", type=int, default=0, metavar="N",
                        help="emit a frame every N strokes (0 disables frames)")
    parser.add_argument("--frames-dir", default="", metavar="DIR",
                        help="directory for numbered frame PNGs")
    parser.add_argument("--log", default="", metavar="PATH",
                        help="write the ordered stroke log here")
    parser.add_argument("--color", action="store_true",
                        help="colorize the sketch from the input's chroma")
    parser.add_argument("--debug-dir", default="", metavar="DIR",
                        help="dump per-stage intermediates (ETF, masks, edge map, ...)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = Config(
        input_path=args.input,
        output_path=args.output,
        stroke_width=args.width,
        n_dirs=args.dirs,
        n_gray_levels=args.levels,
        seed=args.seed,
        etf_radius=args.etf_radius,
        etf_iterations=args.etf_iters,
        frame_every=args.frame_every,
        frames_dir=args.frames_dir,
        log_path=args.log,
        colorize=args.color,
        debug_dir=args.debug_dir,
    )
    try:
        result = run_pipeline(cfg)
    except PencilflowError as exc:
        print(f"pencilflow: error: {exc.kind}: {exc}", file=sys.stderr)
        return 2
    n = result.log.header.n_strokes
    parts = [f"wrote {args.output} ({n} strokes)"]
    if args.log:
        parts.append(f"log: {args.log}")
    if result.frames_emitted:
        parts.append(f"{result.frames_emitted} frames in {args.frames_dir}")
    print("; ".join(parts))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
