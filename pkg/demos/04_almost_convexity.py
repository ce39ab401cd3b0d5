"""
Almost-convexity profiles
=========================

A group is almost convex when same-sphere elements at distance at most 2
can be joined inside the ball by paths of bounded length C.  The profiler
measures C(N) exactly for each radius, with witness pairs realizing it.
"""

from hnnkit import ac_profile, build_ball, preset

# Z^2 is almost convex for any finite generating set; C(N) settles at 2.
for name in ("z2_ab", "z2_abcd"):
    ball = build_ball(preset(name), 9)
    report = ac_profile(ball, 8)
    print(f"{name}: C(N) =", [r.c for r in report.records], "max", report.max_c)

# The HNN extensions: paths sometimes have to run around a strip, which
# is where the larger constants come from.  Watch the witnesses.
for name, radius in (("g2", 7), ("wise", 6)):
    spec = preset(name)
    ball = build_ball(spec, radius)
    report = ac_profile(ball, radius - 1)
    print(f"\n{name}:")
    for line in report.table_lines():
        print("  ", line)
