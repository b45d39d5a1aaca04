"""Compare the sign ideal and the intersection ideal of O(T*T) on a B3 window.

The sign ideal is known to sit inside the intersection ideal; whether the two
differ is open here.  This script only reports what the window shows.

Run: python3 demos/b3_ideal_experiment.py [degree] [height]
"""

import sys

from weylkit.ambient import TorusSymAlgebra, Window
from weylkit.envelope import check_sign_in_cap, ideal_cap, ideal_sign
from weylkit.rootsys import root_system

degree = int(sys.argv[1]) if len(sys.argv) > 1 else 2
height = int(sys.argv[2]) if len(sys.argv) > 2 else 2
ring = TorusSymAlgebra(root_system("B", 3))
window = Window(degree, height)

rep = check_sign_in_cap(ring, window)
print(f"B3 window {window.to_json()}: {rep['sign_elements']} sign basis elements")
print("  every sign element in the intersection window:", rep["ok"])
for entry in rep["certificates"]:
    print("   ", entry["element"])
cap, sign = ideal_cap(ring, window), ideal_sign(ring, window)
inside, witness = cap.span.issubspace(sign.span)
print(f"  window ranks: sign ideal {sign.span.rank}, intersection ideal {cap.span.rank}")
print("  intersection window inside sign window:", inside)
if witness is not None:
    print("  separating candidate:", witness)
