"""Command line interface.

Exit codes: 0 success (and `exists` true), 1 `exists` false or selftest
failure, 2 missing input file or bad arguments, 3 malformed index file,
4 pattern containing the reserved sentinel byte.
"""

import argparse
import sys

from . import _kernels, corpus, parsing, textcore
from .selfindex import IndexFormatError, SelfIndex
from .textcore import Text

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_MISSING = 2
EXIT_FORMAT = 3
EXIT_PATTERN = 4


def _read_file(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_MISSING)


def _load_index(path):
    data = _read_file(path)
    try:
        return SelfIndex.from_bytes(data)
    except IndexFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_FORMAT)


def _pattern_bytes(args):
    if args.pattern_hex is not None:
        try:
            pat = bytes.fromhex(args.pattern_hex)
        except ValueError:
            print("error: --pattern-hex is not valid hex", file=sys.stderr)
            raise SystemExit(EXIT_MISSING)
    else:
        pat = args.pattern.encode("utf-8", errors="surrogateescape")
    if b"\x00" in pat:
        print("error: pattern contains the sentinel byte 0x00", file=sys.stderr)
        raise SystemExit(EXIT_PATTERN)
    return pat


def cmd_build(args):
    data = _read_file(args.input)
    try:
        text = Text(data)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PATTERN
    index = SelfIndex.build(text, kind=args.parser)
    index.save(args.output)
    if args.report:
        total = index.size_bytes()
        print(f"kind={index.kind}")
        print(f"n={index.n}")
        print(f"n_phrases={index.n_phrases}")
        print(f"sigma={index.sigma}")
        print(f"index_bytes={total}")
        print(f"text_bytes={index.n - 1}")
        print(f"ratio={total / max(index.n - 1, 1):.4f}")
        for tag, size in sorted(index.component_sizes().items()):
            print(f"section_{tag.decode()}={size}")
    return EXIT_OK


def cmd_locate(args):
    index = _load_index(args.index)
    pat = _pattern_bytes(args)
    hits = index.locate(pat, cap=args.max, sort=args.sorted)
    out = sys.stdout
    for pos in hits:
        out.write(f"{pos}\n")
    return EXIT_OK


def cmd_exists(args):
    index = _load_index(args.index)
    pat = _pattern_bytes(args)
    found = index.exists(pat)
    print("true" if found else "false")
    return EXIT_OK if found else EXIT_FALSE


def cmd_extract(args):
    index = _load_index(args.index)
    try:
        chunk = index.extract(args.start, args.len)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    sys.stdout.buffer.write(chunk)
    sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_parse(args):
    data = _read_file(args.input)
    try:
        text = Text(data)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PATTERN
    if args.parser == parsing.LZ77:
        parse = parsing.parse_lz77(text)
        stats = parsing.compute_height(parse)
    elif args.parser == parsing.LZ78:
        parse = parsing.parse_lz78(text)
        stats = parsing.compute_height(parse)
    else:
        parse, stats = parsing.parse_lzend(text)
    print(f"kind={parse.kind}")
    print(f"n={parse.n}")
    print(f"n_phrases={parse.n_phrases}")
    print(f"max_phrase_len={stats.max_phrase_len}")
    print(f"height={stats.height}")
    print(f"mean_height={stats.mean_height:.4f}")
    if stats.retraversed is not None:
        print(f"retraversed={stats.retraversed}")
        print(f"retraversed_ratio={stats.retraversed / parse.n:.4f}")
    return EXIT_OK


def cmd_stats(args):
    data = _read_file(args.input)
    for k, h, pct, ctx in textcore.entropy_table(data, args.kmax):
        print(f"{k}\t{h:.4f}\t{pct:.2f}%\t{ctx}")
    print(f"# ipm={textcore.ipm(data):.3f}", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args):
    if args.family == "fib":
        data = corpus.gen_fibonacci(args.order)
        meta = corpus.generator_metadata("fib", {"order": args.order})
    elif args.family == "thuemorse":
        data = corpus.gen_thue_morse(args.order)
        meta = corpus.generator_metadata("thuemorse", {"order": args.order})
    else:
        base = _read_file(args.base)
        scheme = 1 if args.family == "mutate1" else 2
        data = corpus.gen_mutated(base, args.copies, args.rate, scheme, args.seed)
        meta = corpus.generator_metadata(
            args.family,
            {"base": args.base, "copies": args.copies, "rate": args.rate},
            seed=args.seed,
        )
    with open(args.output, "wb") as fh:
        fh.write(data)
    with open(args.output + ".meta", "w") as fh:
        fh.write(meta + "\n")
    print(f"wrote {len(data)} bytes to {args.output}")
    return EXIT_OK


RUNNING_EXAMPLE = b"alabar_a_la_alabarda"


def cmd_selftest(args):
    failures = 0

    def check(name, got, want):
        nonlocal failures
        ok = got == want
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: got {got!r}, want {want!r}")

    text = Text(RUNNING_EXAMPLE)
    lz77 = parsing.parse_lz77(text)
    lzend, _ = parsing.parse_lzend(text)
    lz78 = parsing.parse_lz78(text)
    check("lz77 phrase count", lz77.n_phrases, 9)
    check("lzend phrase count", lzend.n_phrases, 10)
    check("lz78 phrase count", lz78.n_phrases, 11)
    for kind in (parsing.LZ77, parsing.LZEND):
        index = SelfIndex.build(text, kind=kind)
        check(f"{kind} locate 'la'", sorted(index.locate(b"la")), [2, 10, 14])
        check(f"{kind} locate 'ala'", sorted(index.locate(b"ala")), [1, 13])
        check(f"{kind} exists 'alabard'", index.exists(b"alabard"), True)
        check(f"{kind} exists 'xyz'", index.exists(b"xyz"), False)
        check(f"{kind} extract", index.extract(13, 6), b"alabar")
    print("PASS all" if failures == 0 else f"FAIL ({failures} checks)")
    return EXIT_OK if failures == 0 else EXIT_FALSE


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="lzsix",
        description="Compressed self-index for repetitive texts (LZ77 / LZ-End).",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s, backend={_kernels.backend()}")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="build an index from a text file")
    p.add_argument("--parser", choices=[parsing.LZ77, parsing.LZEND], default=parsing.LZ77)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("locate", help="print occurrence positions, one per line")
    p.add_argument("--index", required=True)
    p.add_argument("--pattern")
    p.add_argument("--pattern-hex", dest="pattern_hex")
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--sorted", action="store_true")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("exists", help="test whether a pattern occurs")
    p.add_argument("--index", required=True)
    p.add_argument("--pattern")
    p.add_argument("--pattern-hex", dest="pattern_hex")
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("extract", help="write a text slice to stdout")
    p.add_argument("--index", required=True)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("parse", help="parse a file and print statistics")
    p.add_argument("--parser", choices=[parsing.LZ77, parsing.LZ78, parsing.LZEND], default=parsing.LZ77)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("stats", help="empirical entropy table")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="generate a corpus file")
    gsub = p.add_subparsers(dest="family", required=True)
    g = gsub.add_parser("fib")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--output", required=True)
    g = gsub.add_parser("thuemorse")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--output", required=True)
    for fam in ("mutate1", "mutate2"):
        g = gsub.add_parser(fam)
        g.add_argument("--base", required=True)
        g.add_argument("--copies", type=int, required=True)
        g.add_argument("--rate", type=float, required=True)
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="golden checks on the running example")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None):
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    if args.verb in ("locate", "exists") and args.pattern is None and args.pattern_hex is None:
        ap.error("one of --pattern or --pattern-hex is required")
    try:
        return args.func(args)
    except BrokenPipeError:
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except SystemExit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
