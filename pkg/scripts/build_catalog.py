"""Regenerate the frozen block catalogue shipped with the package."""

import argparse
import json

from planar_turan.oracle import build_catalog, catalog_path


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-v", type=int, default=6)
    ap.add_argument("--out", default=str(catalog_path()))
    args = ap.parse_args()
    data = build_catalog(args.max_v)
    with open(args.out, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
    for v, entries in data["classes"].items():
        print(v, len(entries), " ".join(e["alias"] for e in entries))


if __name__ == "__main__":
    main()
