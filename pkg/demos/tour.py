"""
A short tour: codes, classification and certified extraction
============================================================

We build C2_5, read off the worked example on circle 3, classify its triples,
then pull a certified copy of one of the three unavoidable families out of a
random arrangement of plane circles and print the trace of the branch taken.
"""

import json
import random

from pseudocircles import (
    check_certificate,
    classify_triple,
    find_unavoidable,
    gen_C2,
    is_packed,
    random_circles,
    circles_to_arrangement,
    restrict,
)

c2 = gen_C2(5)
print(c2.to_text())
print("circle 3 unsigned:", "".join(map(str, c2.unsigned(3))))
print("triple {1,3,5}:", classify_triple(restrict(c2, {1, 3, 5})))
print("NonKrupp-packed:", is_packed(c2, "NonKrupp"))

rng = random.Random(2024)
for label, kwargs in [
    ("uniform", {}),
    ("near-collinear", {"spread": 2.0, "yspread": 0.05, "radius": (1.0, 3.0)}),
]:
    arr = circles_to_arrangement(random_circles(16, rng, **kwargs))
    result = find_unavoidable(arr, 4)
    print(f"\n{label}: {result.family} on circles {sorted(result.subset)}")
    print("certificate verifies:", check_certificate(result.certificate, arr))
    print(json.dumps(result.trace, indent=1))
