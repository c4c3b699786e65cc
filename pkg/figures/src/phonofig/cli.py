"""Command line: ``phonofig render <panel spec> -o out.svg``."""

import argparse
import sys

from .csvio import SchemaError
from .panels import load_spec, render


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="phonofig",
        description="Render simulation result CSVs into SVG panels.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    rp = sub.add_parser("render", help="render one panel spec to SVG")
    rp.add_argument("spec", help="path to an INI panel spec")
    rp.add_argument("--output", "-o", help="output SVG path (overrides the spec)")
    args = ap.parse_args(argv)

    try:
        spec = load_spec(args.spec)
        out = render(spec, output=args.output)
    except (OSError, ValueError) as exc:  # SchemaError is a ValueError
        kind = "schema error" if isinstance(exc, SchemaError) else "error"
        print(f"{kind}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
