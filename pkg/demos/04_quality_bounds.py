"""Quality bounds: the exact certificate and the worst-case family.

Run:  python demos/04_quality_bounds.py

The first-vector bound |b(v1,v1)|^rank <= gamma0^(-rank(rank-1))
* D^(sum N_i) * |det|, with D = gamma0^2/(gamma0 - 1/4), is checked as
an exact rational inequality after every reduction.  The block-chained
family below meets it with no slack to spare as gamma0 approaches 1,
while random instances sit far inside.
"""

from indeflll import (
    ReducerParams,
    gen_random_symmetric,
    gen_random_unimodular,
    gen_worstcase,
    reduce,
    verify_theorem_bound,
)

print("== random instances: large slack ==")
for seed in (1, 2, 3):
    g = gen_random_symmetric(8, 100, seed)
    r = reduce(g)
    rep = verify_theorem_bound(r, g)
    print(f"  seed {seed}: rank {rep.rank}, sum N_i = {rep.sum_definite}, "
          f"holds = {rep.holds}, slack ~ {float(rep.slack):.3e}")

print()
print("== the worst-case family: maximal definite-block exponent ==")
for d in (3, 4, 5):
    w = gen_worstcase(d)
    r = reduce(w)
    rep = verify_theorem_bound(r, w)
    print(f"  d = {d}: dim {w.dim}, sum N_i = {rep.sum_definite}, "
          f"holds = {rep.holds}, slack ~ {float(rep.slack):.3e}")

print()
print("== scrambling the worst case and reducing recovers short vectors ==")
w = gen_worstcase(5)
for seed in (0, 1, 2):
    g = w.congruence(gen_random_unimodular(10, 30, seed))
    r = reduce(g, ReducerParams(sign_strategy=True))
    print(f"  seed {seed}: first squared norm after reduction = {r.first_entry()}")
