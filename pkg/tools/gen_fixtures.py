"""Regenerate the bundled prime-knot fixtures.

Needs spherogram, which the package itself never imports:

    PYTHONPATH=/path/to/spherogram python tools/gen_fixtures.py [--max-crossings 9] [--out DIR]
"""
import argparse
from pathlib import Path

# Rolfsen table sizes per crossing number
COUNTS = {3: 1, 4: 1, 5: 2, 6: 3, 7: 7, 8: 21, 9: 49}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-crossings", type=int, default=9, choices=sorted(COUNTS))
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "src" / "knotbound" / "data")
    args = ap.parse_args()

    import spherogram

    pd_lines, rows = [], ["name,crossing_number"]
    for n in range(3, args.max_crossings + 1):
        for k in range(1, COUNTS[n] + 1):
            name = f"{n}_{k}"
            pd = spherogram.Link(name).PD_code()
            if len(pd) != n:
                raise SystemExit(f"{name}: table diagram has {len(pd)} crossings")
            pd_lines.append(name + " " + " ".join("X(%d,%d,%d,%d)" % tuple(e + 1 for e in x) for x in pd))
            rows.append(f"{name},{n}")
    (args.out / "prime_pd.txt").write_text("\n".join(pd_lines) + "\n")
    (args.out / "crossing_numbers.csv").write_text("\n".join(rows) + "\n")
    print(f"wrote {len(pd_lines)} knots to {args.out}")


if __name__ == "__main__":
    main()
