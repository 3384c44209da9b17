"""Recompute the facts of the weakly 4-connected breadth-critical example for a range of s."""
import argparse
import time

from tanglekit import bits, corpus
from tanglekit import connectivity as cn
from tanglekit import minors as mn
from tanglekit import tangle as tg


def report(s: int, recursive: bool) -> None:
    t0 = time.perf_counter()
    M = corpus.section9_matroid(s)
    Ts = tg.enumerate_tangles(M, 4)
    print(f"s={s}: n={M.n}, weakly 4-connected={cn.is_weakly_4_connected(M)}, "
          f"triangles={sum(bits.popcount(c) == 3 for c in cn.circuits(M, max_size=3))}, order-4 tangles={len(Ts)}")
    for T in Ts:
        b = tg.breadth(T)
        print(f"  breadth {b.value}, witness {{{','.join(M.labels_of(b.witness))}}}")
        rep = mn.is_breadth_critical_one_step(M, T)
        print(f"  one-step critical: {rep.critical}")
        for row in rep.table:
            print(f"    {row.removal}: {row.status}" + (f", breadth {row.breadth}" if row.breadth is not None else ""))
        if recursive:
            rec = mn.is_breadth_critical_recursive(M, T)
            print(f"  recursive critical: {rec.critical} (complete={rec.complete}, {rec.explored} minors)")
    for perm in corpus.SECTION9_SYMMETRIES:
        print(f"  symmetry {perm}: {corpus.permuted(M, perm).same_as(M)}")
    print(f"  {time.perf_counter() - t0:.1f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("s", nargs="*", type=int, default=[6])
    ap.add_argument("--recursive", action="store_true", help="also search deeper minors (slow)")
    args = ap.parse_args()
    for s in args.s:
        report(s, args.recursive)


if __name__ == "__main__":
    main()
