#!/usr/bin/env python3
"""Write the synthetic fixture scenes to disk as 8-bit PNG + PFM disparity.

Usage: python scripts/make_fixtures.py [out_dir] [--size WxH]
"""

import argparse
import os

from depthcue import io
from depthcue.testcards import fixture_set


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", nargs="?", default="fixtures")
    ap.add_argument("--size", default="256x192", help="scene size, e.g. 512x384")
    args = ap.parse_args()
    w, h = (int(v) for v in args.size.lower().split("x"))
    os.makedirs(args.out_dir, exist_ok=True)
    for name, (rgb, near) in fixture_set(w, h):
        io.save_image(rgb, os.path.join(args.out_dir, f"{name}.png"), 8)
        io.save_pfm(10.0 + 90.0 * near, os.path.join(args.out_dir, f"{name}.pfm"))
        print(f"wrote {name}.png / {name}.pfm ({rgb.shape[1]}x{rgb.shape[0]})")


if __name__ == "__main__":
    main()
