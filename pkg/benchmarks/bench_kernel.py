"""Benchmark: compiled stage kernel vs the pure-Python fallback.

Evolves the numeric stage backbone until the node allowance is hit and
times each kernel implementation on identical work.

    python benchmarks/bench_kernel.py --spec "2,3,inf" --nodes 1000000
"""

import argparse
import sys
import time
from array import array
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cantorforge.genus_spec import CycleTail, parse_spec  # noqa: E402
from cantorforge.kernel import implementations  # noqa: E402


def spec_arrays(spec):
    prefix = array("q", [(-1 if v.is_infinite else v.finite) for v in spec.prefix])
    if isinstance(spec.tail, CycleTail):
        kind, vals = 1, spec.tail.values
    else:
        kind, vals = 0, (spec.tail.value,)
    tail = array("q", [(-1 if v.is_infinite else v.finite) for v in vals])
    return prefix, kind, tail


def evolve(impl, spec, node_allowance):
    prefix, tail_kind, tail_vals = spec_arrays(spec)
    genus = array("q", [2])
    terms = array("q", [prefix[0]])
    stage = 1
    total = 1
    while True:
        if stage % 2 == 1:
            genus = impl.bump_stage(genus, terms)
        else:
            nxt = len(genus) + 6 * impl.genus_total(genus)
            if total + nxt > node_allowance:
                break
            genus, terms, _ = impl.expand_stage(
                genus, terms, prefix, tail_kind, tail_vals, -1
            )
        stage += 1
        total += len(genus)
    return stage, total, impl.genus_total(genus)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--spec", default="2,3,inf")
    parser.add_argument("--nodes", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    spec = parse_spec(args.spec)
    impls = implementations()
    print(f"spec {spec.render()}, node allowance {args.nodes}")
    baseline = None
    for name in ("python", "compiled"):
        if name not in impls:
            print(f"{name:>9}: not built")
            continue
        best = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            stage, total, checksum = evolve(impls[name], spec, args.nodes)
            elapsed = time.perf_counter() - t0
            best = elapsed if best is None else min(best, elapsed)
        note = ""
        if name == "python":
            baseline = best
        elif baseline:
            note = f"  ({baseline / best:.1f}x faster than python)"
        print(
            f"{name:>9}: {best * 1000:8.1f} ms   reached stage {stage}, "
            f"{total} nodes, genus sum {checksum}{note}"
        )


if __name__ == "__main__":
    main()
