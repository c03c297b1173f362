"""``gcx check <file|dir> [--format text|json] [--max-page R] [--oracle] [--jobs N]``"""

import argparse
import sys

from .report import RunConfig, render_json, render_text, run_corpus, use_color


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="gcx", description="Generalized Dolbeault, Bott-Chern and Aeppli cohomology of Lie algebra models.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="analyze model files or directories of .gcx files")
    check.add_argument("paths", nargs="+", metavar="file|dir")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--max-page", type=_positive, default=None, metavar="R",
                       help="report spectral pages up to R (E_inf is always computed)")
    check.add_argument("--oracle", action="store_true",
                       help="decide the lemma by subspace equality as well as by dimensions")
    check.add_argument("--jobs", type=_positive, default=1, metavar="N")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = RunConfig(args.format, args.max_page, args.oracle, args.jobs, use_color())
    results, code = run_corpus(args.paths, config)
    if args.format == "json":
        sys.stdout.write(render_json(results))
    else:
        sys.stdout.write(render_text(results, color=config.color))
    return code


if __name__ == "__main__":
    sys.exit(main())
