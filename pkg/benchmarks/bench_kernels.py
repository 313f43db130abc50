#!/usr/bin/env python3
"""Compare the compiled kernel lane against the pure Python lane.

Runs parse, index build, extraction and locate workloads over generated
repetitive corpora in a subprocess per lane (the lane is fixed at import
time) and prints a side-by-side table.

    python benchmarks/bench_kernels.py            # both lanes
    python benchmarks/bench_kernels.py --lane pure --size 262144
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = ("parse_lz77", "parse_lzend", "build_lzend", "extract", "locate")


def run_workloads(size):
    import lzsix

    base = lzsix.gen_mutated(b"compressed indexes love repetitive texts. " * 96, 1, 0.4, 1, seed=1)
    data = lzsix.gen_mutated(base, max(2, size // len(base)), 0.001, 2, seed=2)[:size]
    text = lzsix.Text(data)
    out = {"backend": lzsix.backend(), "size": len(data)}

    t0 = time.perf_counter()
    p77 = lzsix.parse_lz77(text)
    out["parse_lz77"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    pend, _ = lzsix.parse_lzend(text)
    out["parse_lzend"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    idx = lzsix.SelfIndex.build(text, kind="lzend")
    out["build_lzend"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    assert idx.extract(1, len(data)) == data
    enc = idx.enc
    for k in range(2000):
        start = 1 + (k * 977) % (len(data) - 64)
        enc.extract(start, 64)
    out["extract"] = time.perf_counter() - t0

    pats = [data[(k * 4093) % (len(data) - 12) : (k * 4093) % (len(data) - 12) + 12] for k in range(100)]
    t0 = time.perf_counter()
    hits = sum(len(idx.locate(p, cap=1000)) for p in pats)
    out["locate"] = time.perf_counter() - t0
    out["locate_hits"] = hits
    out["n_phrases"] = idx.n_phrases
    return out


def run_lane(lane, size):
    env = dict(os.environ)
    if lane == "pure":
        env["LZSIX_PURE"] = "1"
    else:
        env.pop("LZSIX_PURE", None)
    code = (
        "import json, sys; sys.path.insert(0, {!r}); "
        "import bench_kernels; print(json.dumps(bench_kernels.run_workloads({})))"
    ).format(os.path.dirname(os.path.abspath(__file__)), size)
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=1 << 18)
    ap.add_argument("--lane", choices=["pure", "compiled", "both"], default="both")
    args = ap.parse_args()
    lanes = ["pure", "compiled"] if args.lane == "both" else [args.lane]
    results = {}
    for lane in lanes:
        results[lane] = run_lane(lane, args.size)
        if results[lane]["backend"] != lane:
            print(f"note: requested {lane}, got {results[lane]['backend']} "
                  "(compiled extension not built?)", file=sys.stderr)
    first = results[lanes[0]]
    print(f"text size: {first['size']} bytes, lzend phrases: {first['n_phrases']}")
    header = f"{'workload':<14}" + "".join(f"{lane:>12}" for lane in lanes)
    if len(lanes) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for w in WORKLOADS:
        row = f"{w:<14}" + "".join(f"{results[lane][w]:>11.3f}s" for lane in lanes)
        if len(lanes) == 2 and results[lanes[1]][w] > 0:
            row += f"{results[lanes[0]][w] / results[lanes[1]][w]:>9.1f}x"
        print(row)
    print("(locate runs the same index-side Python in both lanes; only its "
          "extraction verifies differ)")


if __name__ == "__main__":
    main()
