"""
Realizing C3_5 with plane circles
=================================

Circles whose centers lie on one line are symmetric in that line, so every
code read from the leftmost point is a palindrome up to signs and the result
is always C2.  In particular the chain of circles centered at (i, 0) with
radius 0.9 i + 10 gives C2_5, not C3_5.

A realization of C3_5 needs centers off a common line.  The five circles
below were found by perturbing small C3 realizations; we check general
position with a margin of 1e-3 and confirm the isomorphism.
"""

from pseudocircles import (
    PlaneCircle,
    check_general_position,
    circles_to_arrangement,
    gen_C2,
    gen_C3,
    is_isomorphic,
)

chain = [PlaneCircle(i, float(i), 0.0, 0.9 * i + 10) for i in range(1, 6)]
chain_arr = circles_to_arrangement(chain)
print("collinear chain ~ C2_5:", is_isomorphic(chain_arr, gen_C2(5)) is not None)
print("collinear chain ~ C3_5:", is_isomorphic(chain_arr, gen_C3(5)) is not None)

c3 = [
    PlaneCircle(1, 0.34, 0.55, 1.77),
    PlaneCircle(2, 0.18, -0.78, 0.56),
    PlaneCircle(3, -0.68, -0.64, 0.46),
    PlaneCircle(4, 0.30, 0.71, 1.83),
    PlaneCircle(5, 0.28, 0.65, 1.88),
]
print("general position at 1e-3:", check_general_position(c3, 1e-3))
arr = circles_to_arrangement(c3)
t = is_isomorphic(arr, gen_C3(5))
print("off-axis circles ~ C3_5:", t is not None)
print(arr.to_text())
