"""
Searching for the arrangement X4
================================

X4 is a bad NonKrupp-packed arrangement of four circles.  We sample random
plane circles until one such arrangement shows up, then print its codes
relabelled so that the natural order 1, 2, 3, 4 is the bad order.  The output
is the frozen data behind ``families.gen_X4``.
"""

import random

from pseudocircles import codes, families, geometry

rng = random.Random(4)

for attempt in range(1, 200001):
    circles = geometry.random_circles(4, rng, spread=1.5, radius=(0.6, 2.0))
    arr = geometry.circles_to_arrangement(circles)
    if not families.is_packed(arr, families.NONKRUPP):
        continue
    order = families.find_bad_labeling(arr)
    if order is not None:
        break
else:
    raise SystemExit("no X4 found")

x4 = codes.relabel(arr, {old: new for new, old in enumerate(order, 1)})
print(f"found after {attempt} samples")
print(geometry.format_circles(circles))
print(x4.to_text())
assert families.is_bad(x4, [1, 2, 3, 4])
