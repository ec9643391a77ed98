"""Walkthrough of the expression layer: parsing, evaluation, and exact
forward-mode derivatives, compared against central finite differences.

Run with:  python3 demos/expression_autodiff_walkthrough.py
"""

import numpy as np

from acsgeo import Dual, eval_with_derivative, parse_expression
from acsgeo.expressions import primal, tangent

coords = ["x", "y", "z"]

# -- parse and evaluate ------------------------------------------------------

f = parse_expression("x^2 + sin(y) * exp(-z)", coords)
p = [2.0, 0.5, 1.0]
print("f          =", f.to_string())
print("f(2,.5,1)  =", f(p))

# -- exact partial derivatives ----------------------------------------------

for j, name in enumerate(coords):
    val, der = eval_with_derivative(f, p, j)
    # central difference with a small step for comparison
    h = 1e-6
    q_plus, q_minus = list(p), list(p)
    q_plus[j] += h
    q_minus[j] -= h
    fd = (f(q_plus) - f(q_minus)) / (2 * h)
    print(f"d f / d {name} = {der:.15f}   (finite difference {fd:.15f})")

# -- second derivatives come from nesting dual numbers -----------------------
# Seeding a Dual whose parts are themselves Duals tracks d/dx of d/dx.

g = parse_expression("x^4 - 3*x^2", coords[:1])
x0 = 1.5
xx = Dual(Dual(x0, 1.0), Dual(1.0, 0.0))
out = g.eval_scalar([xx])
print("\ng        =", g.to_string())
print("g(1.5)   =", primal(primal(out)))
print("g'(1.5)  =", primal(tangent(out)), "  (expect 4x^3 - 6x =", 4 * x0**3 - 6 * x0, ")")
print("g''(1.5) =", tangent(tangent(out)), " (expect 12x^2 - 6 =", 12 * x0**2 - 6, ")")

# -- the grammar is small but strict ----------------------------------------

print("\nprecedence check: -x^2 evaluates as -(x^2):",
      parse_expression("-x^2", ["x"])([3.0]))
try:
    parse_expression("x^2.5", ["x"])
except Exception as exc:
    print("non-integer exponents are rejected:", exc)
try:
    parse_expression("x + w", ["x", "y"])
except Exception as exc:
    print("unknown identifiers are rejected:", exc)
