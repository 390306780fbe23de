"""The norm-growth experiment: quadratic response to the rectangle family.

For data concentrated on the frequency rectangles A_N, B_N with unit
H^{s,0} size, the second iterate of the Duhamel map evaluated at the time
t_N = N^(-4-eps) grows like N^(-s-1/2-eps) once s < -1/2, so its norm
blows up along the family although the data stay bounded: the quadratic
term of the data-to-solution map is unbounded below s = -1/2.

We compute ||u2(t_N)||_{H^{s,0}} semi-analytically (closed-form kernel,
exact rectangle intersections, Gauss-Legendre panels) and fit log-log
slopes. Expect a clearly positive slope at s = -3/4 versus a flat-to-
falling one at s = -1/4.

Run:  python demos/norm_growth_scan.py        (~15 s)
"""

import dmkp_lab as dl
from dmkp_lab.illposed import ScanConfig, hs_norm_exact, RectangleData
from dmkp_lab.io import write_csv

params = dl.ModelParams.dmkp()
config = ScanConfig(n_values=(16.0, 32.0, 64.0, 128.0), s_values=(-0.75, -0.25), eps=0.1)

print("data-family norms (should all sit near 1):")
for s in config.s_values:
    vals = [hs_norm_exact(RectangleData(n, s)) for n in config.n_values]
    print(f"  s = {s:5.2f}: " + ", ".join(f"{v:.3f}" for v in vals))

result = dl.scan_and_fit(config, params)
rows = [(r.n, r.s, r.eps, r.norm, r.slope) for r in result.rows]
write_csv("out/illposed_scan.csv", "illposed-scan", ["N", "s", "eps", "norm", "slope"], rows)
print("wrote out/illposed_scan.csv")

for s, slope in sorted(result.slopes.items()):
    reference = -s - 0.5 - config.eps
    print(f"s = {s:5.2f}: fitted slope {slope:+.3f}   (growth-law reference {reference:+.3f})")
print("the s = -3/4 slope exceeds its lower-bound reference; at s = -1/4 the")
print("norms stay in a fixed band, consistent with well-posedness there.")
