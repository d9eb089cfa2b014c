"""Command-line entry point: encode, decode, bench, gen."""

from __future__ import annotations

import argparse
import csv
import logging
import sys

from .bench import CSV_COLUMNS, DEFAULT_SIZES, KINDS, BenchConfig, csv_rows, generate_test_image, run_benchmark
from .errors import EntropyBenchError
from .netpbm import read_image, write_pgm
from .pipeline import DEFAULT_QUALITY, compress, decompress


def _sizes(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def cmd_encode(args) -> int:
    plane = read_image(args.input)
    data = compress(plane, backend=args.codec, source=args.source, quality=args.quality)
    with open(args.output, "wb") as f:
        f.write(data)
    ratio = plane.width * plane.height / len(data)
    print(f"{args.input}: {plane.width}x{plane.height} -> {len(data)} bytes (ratio {ratio:.3f})")
    return 0


def cmd_decode(args) -> int:
    with open(args.input, "rb") as f:
        plane = decompress(f.read())
    with open(args.output, "wb") as f:
        f.write(write_pgm(plane))
    return 0


def cmd_gen(args) -> int:
    plane = generate_test_image(args.kind, args.size, args.seed)
    with open(args.output, "wb") as f:
        f.write(write_pgm(plane))
    return 0


def cmd_bench(args) -> int:
    sizes = args.sizes
    if sizes is None:
        sizes = () if args.images else DEFAULT_SIZES
    config = BenchConfig(
        sizes=sizes, repetitions=args.reps, source=args.source, images=args.images,
        kinds=args.kinds.split(","), seed=args.seed, quality=args.quality,
    )
    records, rows = run_benchmark(config)
    print(f"{'size':>6} {'image':<24} {'H ratio':>9} {'A ratio':>9} {'H time':>10} {'A time':>10} {'comp%':>6} {'time%':>6}")
    for r in rows:
        print(
            f"{r.size:>6} {r.image_id:<24} {r.huffman_ratio:>9.3f} {r.arithmetic_ratio:>9.3f} "
            f"{r.huffman_time:>10.5f} {r.arithmetic_time:>10.5f} {r.compression_pct:>6} {r.time_pct:>6}"
        )
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
            w.writeheader()
            w.writerows(csv_rows(records, rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entropybench", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", help="compress a PGM into an ENTC container")
    e.add_argument("--codec", choices=["huffman", "arith", "arithmetic"], default="huffman")
    e.add_argument("--source", choices=["raw", "pipeline"], default="raw")
    e.add_argument("--quality", type=int, default=DEFAULT_QUALITY)
    e.add_argument("input")
    e.add_argument("output")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="expand an ENTC container back to PGM")
    d.add_argument("input")
    d.add_argument("output")
    d.set_defaults(func=cmd_decode)

    b = sub.add_parser("bench", help="compare Huffman and arithmetic coding")
    b.add_argument("--sizes", type=_sizes, default=None,
                   help="comma-separated square sizes (default 128..2048)")
    b.add_argument("--reps", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--source", choices=["raw", "pipeline"], default="raw")
    b.add_argument("--kinds", default="natural_mix", help=f"comma-separated from {','.join(KINDS)}")
    b.add_argument("--quality", type=int, default=DEFAULT_QUALITY)
    b.add_argument("--csv")
    b.add_argument("images", nargs="*")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="write a synthetic test image")
    g.add_argument("--kind", choices=KINDS, default="natural_mix")
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (EntropyBenchError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
