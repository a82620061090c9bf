"""Build the three flagship designs and write their run sheets.

Each design lands in its own subdirectory with design.json, runs.csv, and
verification.json:

  blocked_splitlot_p6   2^6 full factorial, one exact blocked subspace plus
                        two split-lot stages, found after a 148-candidate
                        collineation search on the (6,3) cyclic spread.
  mixed_p7              2^7 full factorial whose first stage holds four
                        factors, hosted on the 17-member mixed spread.
  fraction_2pow8m2      2^(8-2) fraction: eight factors in four stages of two,
                        with aliases for G and H chosen from the spare spread
                        member.
"""

import argparse
import sys
from pathlib import Path

from rdcss.cli import main as rdcss_main

DESIGNS = {
    "blocked_splitlot_p6": [
        "construct",
        "--p",
        "6",
        "--stage",
        "ABC,BDE,CEF:exact",
        "--stage",
        "A,B",
        "--stage",
        "D",
    ],
    "mixed_p7": [
        "construct",
        "--p",
        "7",
        "--stage",
        "A,B,C,D:exact",
        "--stage",
        "E,F",
        "--stage",
        "G",
    ],
    "fraction_2pow8m2": [
        "construct",
        "--factors",
        "8",
        "--basic",
        "6",
        "--t",
        "2",
        "--stage",
        "A,B",
        "--stage",
        "C,D",
        "--stage",
        "E,F",
        "--stage",
        "G,H",
    ],
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir", default="designs", help="parent directory for the designs"
    )
    args = parser.parse_args(argv)

    out = Path(args.out_dir)
    for name, argv_design in DESIGNS.items():
        rc = rdcss_main(argv_design + ["--out-dir", str(out / name)])
        if rc != 0:
            print(f"{name}: failed with exit code {rc}", file=sys.stderr)
            return rc
    print(f"all {len(DESIGNS)} designs written under {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
