"""Newton and Hodge vertices for a set of inputs, as tab-separated rows for external plotting."""
import argparse
import glob
import sys

from dworkzeta.cli_reports import AnalyzeOptions, analyze, load_input
from dworkzeta.errors import InputError


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("inputs", nargs="*")
    args = ap.parse_args(argv)
    paths = args.inputs or sorted(glob.glob("inputs/*.json"))
    print("input\tpolygon\tx\ty")
    for path in paths:
        try:
            spec = load_input(path)
        except InputError as exc:
            print(f"# {path}: {exc}", file=sys.stderr)
            continue
        res = analyze(spec, AnalyzeOptions())
        zr = res.facts.get("zeta")
        if zr is None:
            print(f"# {path}: exit {res.code}", file=sys.stderr)
            continue
        for name, poly in (("newton", zr.newton), ("hodge", zr.hodge)):
            for x, y in poly.vertices:
                print(f"{path}\t{name}\t{x}\t{y}")


if __name__ == "__main__":
    main()
