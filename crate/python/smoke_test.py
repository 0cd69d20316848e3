#!/usr/bin/env python3
"""Smoke test for the dcomplete_py extension module.

Builds the extension if needed (cargo build --release -p dcomplete-py),
makes it importable, and exercises one call of every exposed surface with
known values. Exits non-zero on the first failure.
"""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def ensure_module():
    try:
        import dcomplete_py  # noqa: F401
        return
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "dcomplete-py"],
        cwd=ROOT,
        check=True,
    )
    built = None
    for name in ("libdcomplete_py.so", "libdcomplete_py.dylib", "dcomplete_py.dll"):
        candidate = ROOT / "target" / "release" / name
        if candidate.exists():
            built = candidate
            break
    if built is None:
        sys.exit("error: built extension library not found under target/release")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    staging = Path(tempfile.mkdtemp(prefix="dcomplete_py_"))
    shutil.copy2(built, staging / f"dcomplete_py{suffix}")
    sys.path.insert(0, str(staging))


def main():
    ensure_module()
    import dcomplete_py as dc

    checks = 0

    def check(condition, label):
        nonlocal checks
        if not condition:
            sys.exit(f"FAIL: {label}")
        checks += 1

    seq = dc.sieve_class(4, 1, 1000)
    check(seq.primes()[:5] == [5, 13, 17, 29, 37], "first primes of (4,1)")
    check(seq.partial_sum(13) == 725, "S(13) of (4,1)")
    check(seq.partial_sum_gap(10) == 321, "gap S(10) - q(11)")

    seq43 = dc.sieve_class(4, 3, 1000)
    check(seq43.partial_sum(12) == 460, "S(12) of (4,3)")
    check(seq43.gap_monotone_check(1, 10), "doubling on (4,3)")

    check(dc.interval_check(4, 1, 2, 1, 7, 2000) == [], "Bertrand-type scan")
    check(dc.interval_check(4, 1, 2, 1, 1, 1) == [1], "failure at x=1")

    table = dc.build_presence([3, 7, 11], 3)
    check(table.achievable_sums(3) == [0, 3, 7, 10, 11, 14, 18, 21], "presence sums")
    check(table.witness(18) == [7, 11], "presence witness")

    coeffs = dc.build_coefficients([5, 13, 17], 3)
    check(coeffs.coefficient(3, 35) == 1, "coefficient of full sum")
    check(coeffs.row_sum(3) == 8, "row sum 2^3")

    ok, lo, hi, below, above = dc.verify_window(seq.primes()[:13], 13, 122)
    check(ok and (lo, hi) == (122, 603), "window at prefix 13")
    check((below, above) == (121, 604), "boundary zeros")

    cert = dc.certify(4, 1, 122, 13, sieve_limit=200_000, check_limit=100_000)
    check(cert.valid, "certificate (122, 13) valid")
    check(cert.boundary_zeros == (121, 604), "certificate boundary zeros")
    bad = dc.certify(4, 1, 121, 13, sieve_limit=200_000)
    check(not bad.valid and "121" in bad.failure, "certificate (121, 13) invalid")

    check(dc.represent(18, 4, 1) == [5, 13], "represent 18")
    check(dc.represent(121, 4, 1) is None, "121 not representable")
    check(dc.exceptional_set(4, 3, 200)[-1] == 55, "max exceptional of (4,3)")

    pair = dc.double_representation(121)
    check(pair is not None and sum(pair[0]) == 121 == sum(pair[1]), "double rep of 121")
    check(dc.double_representation(17) is None, "17 has no double rep")
    split = dc.double_representation_split(18)
    check(split == ([5, 13], [7, 11]), "split rep of 18")
    check(
        dc.double_exceptional_set(100) == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 17, 21, 25, 27],
        "double exceptional set",
    )

    check(dc.element_orders(5) == [1, 2, 3, 4, 5, 6], "element orders of S_5")
    check(dc.centralizer_orders([5, 1, 1]) == [1, 2, 5, 10], "centralizer orders")
    pairs = dc.brute_force_commuting_orders(5)
    check((5, 5) in pairs and (5, 6) not in pairs, "oracle pairs in S_5")

    g = dc.build_order_graph(9)
    check(g.is_connected() and g.diameter() == 3, "S_9 graph diameter")
    check(g.dominant_removed() == [1], "dominance removal")
    check(g.has_edge(2, 4), "edge (2,4) present")
    check(g.edge_witness(2, 4) is not None, "edge witness stored")
    g5 = dc.build_order_graph(5)
    check(g5.diameter() is None and len(g5.components()) == 2, "S_5 split graph")

    w = dc.criterion_search(21)
    check(w is not None and w.m in (20, 21), "criterion witness at 21")
    w.validate()
    checks += 1

    rows, discrepancies = dc.verify_corollary2(30, graph_max=30)
    check(rows == 27 and discrepancies == [], "sweep up to 30 clean")

    print(f"smoke test passed: {checks} checks")


if __name__ == "__main__":
    main()
