"""The cone x^2 + y^2 + z^2 = 0 over A1.

The fixed-point ring Q[x1, y1, Z]/(Z (x1^2 + y1^2 + 1)) has Z-torsion, while
in the invariant envelope x1^2 + y1^2 + 1 vanishes outright.

Run: python3 demos/sphere_counterexample.py
"""

from weylkit import sphere_counterexample

rep = sphere_counterexample()
fixed = rep["fixed_point_presentation"]["torsion"]
print(fixed["presentation"]["label"])
for w in fixed["witnesses"][:3]:
    print(f"  {w['chi']} kills {w['witness']}:  {w['certificate']}")
print(f"  ... {len(fixed['witnesses'])} witnesses up to degree {fixed['degree']}")

env = rep["envelope_presentation"]
print("invariant envelope, generated by", ", ".join(env["low_degree_generators"]))
print("  torsion detected:", env["torsion"]["torsion_detected"])
print("  (x/z)^2 + (y/z)^2 + 1 = 0:", rep["relation_exact"]["verified"])
ev = rep["origin_point"]["evidence"]
print(f"  a^2 + b^2 + 1 = 0 over Q: {len(ev['solutions'])} solutions among {ev['candidates']} pairs ({ev['status']})")
