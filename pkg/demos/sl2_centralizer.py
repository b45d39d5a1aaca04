"""The SL2 and SL3 universal-centralizer rings on a window.

Run: python3 demos/sl2_centralizer.py
"""

from weylkit import centralizer_sl2, centralizer_sl3
from weylkit.centralizer import render_presentation

p = centralizer_sl2()
print(render_presentation(p))
print("  generators W-invariant:", p.checks["generators_invariant"])
print("  Z, c, b generate E^W on the window:", p.checks["generation"])
print("  torsion found up to degree", p.checks["torsion"]["degree"], ":", p.checks["torsion"]["torsion_detected"])
print()

q = centralizer_sl3()
print(f"{q.root_system}: {len(q.generators)} generators on window {q.window.to_json()}")
for name, info in q.checks["fundamental_characters"].items():
    print(f"  {name}: orbit size {info['orbit_size']}, in span {info['in_span']}")
sample = [g for g in q.generators if g.delta_power == 1][:3]
for g in sample:
    print("  e.g.", g)
print("  generation:", q.checks["generation"], " stable under enlargement:", q.checks["enlargement_monotone"])
