"""
Verifying the isometric conditions
==================================

An HNN extension is isometric when the associated subgroup pairs are strip
equidistant (paired generators have equal base length) and totally geodesic
(every geodesic spelling of a subgroup element stays inside the subgroup's
generator language).  Both shipped presets pass; a deliberately broken
variant shows the witness reporting.
"""

from hnnkit import load_spec_text, preset, verify_isometric

for name in ("wise", "g2"):
    report = verify_isometric(preset(name), max_len=6)
    print(f"{name}:")
    for line in report.lines():
        print("  ", line)

# Swap <d> for <c> on the stable letter s.  Strip equidistance survives
# (|a| = |c| = 1) but c^2 = d makes powers of c non-geodesic, so both
# geodesic conditions fail, each with an explicit witness.
broken = load_spec_text("""
base {
  kind = abelian
  generators = a b c d
  relator c = ab
  relator c = ba
  relator d = cc
}
stable s {
  u = [a]
  v = [c]
}
""", name="broken")

print("broken variant (v = <c> instead of <d>):")
report = verify_isometric(broken, max_len=6)
for line in report.lines():
    print("  ", line)
