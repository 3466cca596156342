"""Compare the compiled and numpy weight-enumeration backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from msrd import kernels
from msrd.codes import to_fq_linear
from msrd.combiners import StackSpec, stack_product
from msrd.extenders import build_lattice_t2, extend_lattice
from msrd.gf import FieldTower
from msrd.msrd_gen import build_lrs


def instances():
    t9 = FieldTower.from_q(3, 2)
    lrs = to_fq_linear(build_lrs(t9, 2, 2))
    yield "lrs q=3 dim=4", lrs
    yield "stack q=3 dim=8", stack_product(StackSpec([lrs, lrs]))
    ing = build_lattice_t2(t9, 1, 2, 1)
    yield "cons3-t2 q=3 dim=6", extend_lattice(ing.spec([(2, 1), (2, 1)], [1, 2]), verify=False)
    yield "lrs q=4 dim=6", to_fq_linear(build_lrs(FieldTower.from_q(4, 2), 2, 3))
    yield "gabidulin q=2 m=8 dim=16", to_fq_linear(build_lrs(FieldTower.from_q(2, 8), 8, 2))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    impls = kernels.backends()
    print(f"{'instance':24} {'codewords':>10} " + " ".join(f"{n:>10}" for n in impls) + "   speedup")
    for name, code in instances():
        basis, layout, tabs = code.basis_matrix(), code.profile.layout(), code.field.tables()
        results, times = {}, {}
        for impl_name, impl in impls.items():
            times[impl_name], results[impl_name] = best_of(
                lambda impl=impl: kernels.codeword_weights(basis, layout, tabs, impl=impl), args.repeat
            )
        ref = results["python"]
        assert all(np.array_equal(ref, r) for r in results.values()), "backends disagree"
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cols = " ".join(f"{times[n] * 1e3:9.2f}ms" for n in impls)
        print(f"{name:24} {code.size():>10} {cols}   {speed:6.1f}x")


if __name__ == "__main__":
    main()
