"""A walk through binary quadratic form reduction in all three regimes.

Run:  python demos/01_binary_forms.py
"""

from indeflll import (
    BQForm,
    apply,
    is_reduced,
    reduce_definite,
    reduce_indefinite,
    reduce_square_disc,
)


def show(label, f):
    print(f"{label}: ({f.a}, {f.b}, {f.c})   disc = {f.disc}   reduced = {is_reduced(f)}")


print("== definite forms: Gauss reduction to |b| <= |a| <= |c| ==")
f = BQForm(31, 47, 18)
show("start", f)
g, t = reduce_definite(f)
show("reduced", g)
print("transform rows:", t.rows(), " det:", t.det)
print("check: applying the transform reproduces the output:",
      apply(f, t).coeffs() == g.coeffs())

print()
print("== degenerate forms (disc = 0) are a GCD computation ==")
f = BQForm(4, 4, 1)
g, t = reduce_definite(f)
show("(4, 4, 1) becomes", g)

print()
print("== indefinite forms: walk the reduction, then the cycle ==")
f = BQForm(1, 0, -2)
trajectory = reduce_indefinite(f, max_extra=4)
for g, t in trajectory:
    show("  cycle", g)
print("note the alternating sign of the leading coefficient.")

print()
print("== a pathologically unbalanced form still reduces in few steps ==")
f = BQForm(5133516356526721720, -2 * 5133515988396719824, 5133515620266744327)
g, _ = reduce_indefinite(f, 0)[0]
show("reduced", g)

print()
print("== square discriminants have their own terminal shapes ==")
for coeffs in ((3, 6, 0), (1, 0, -1), (2, -2, 0)):
    f = BQForm(*coeffs)
    g, _ = reduce_square_disc(f)
    print(f"  {coeffs} -> ({g.a}, {g.b}, {g.c})")
