"""extract_repdata: drive GAP to produce a repdata document."""

import argparse
import shutil
import sys

EXIT_FAILURE = 1
EXIT_INPUT = 3


def parser():
    p = argparse.ArgumentParser(
        prog="extract_repdata",
        description="Write the representation data of a small group as a repdata document.",
    )
    p.add_argument("--order", type=int, required=True, help="group order")
    p.add_argument("--index", type=int, required=True, help="index in the small groups library")
    p.add_argument("--out", required=True, help="output file")
    p.add_argument("--gap", default="gap", help="GAP executable (default: gap on PATH)")
    return p


def main(argv=None):
    args = parser().parse_args(argv)
    if args.order < 1 or args.index < 1:
        print("extract_repdata: --order and --index must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.order & (args.order - 1):
        print(f"extract_repdata: warning: order {args.order} is not a power of 2", file=sys.stderr)
    if shutil.which(args.gap) is None:
        print(
            f"extract_repdata: cannot find the GAP executable {args.gap!r}.\n"
            "Install GAP (https://www.gap-system.org) and put it on PATH, or pass --gap.\n"
            "swc does not need this tool: the bundled fixtures in crates/swc/fixtures\n"
            "cover every built-in check.",
            file=sys.stderr,
        )
        return EXIT_FAILURE
    print(
        "extract_repdata: the GAP session driver is not available in this release",
        file=sys.stderr,
    )
    return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
