"""Independent high-precision values frozen into the C++ tests.

Run with: python3 tests/oracles/oracles.py
"""
from mpmath import mp, mpf, sqrt, findroot, polyroots

mp.dps = 40


def delta(a, b):
    return sqrt(a**4 - a**2 * b**2 + b**4)


def show(name, *vals):
    print(name, " ".join(mp.nstr(v, 17) for v in vals))


a, b = mpf("1.5"), mpf(1)
d = delta(a, b)
c2 = a**2 - b**2
show("delta(1.5,1)", d)
show("delta(2,1)", delta(2, 1))
ac, bc = a * (d - b**2) / c2, b * (a**2 - d) / c2
show("confocal caustic (1.5,1)", ac, bc)
r2 = sqrt(2)
d2 = delta(r2, 1)
show("confocal caustic (sqrt2,1)", r2 * (d2 - 1) / (2 - 1), (2 - d2) / (2 - 1))
show("c' (1.5,1)", sqrt(2 * d - a**2 - b**2) / sqrt(c2))
show("a1 b1", (d - b**2) / a, (a**2 - d) / b)
show("excenters", (b**2 + d) / a, (a**2 + d) / b)
k2 = (2 * d - a**2 - b**2) / (3 * c2)
show("k2 a2 b2", k2, k2 * a, k2 * b)
show("a40 b40", c2 / a, c2 / b)
show("degenerate ratios", (2 * a**2 - b**2 + d) / (2 * b**2), (2 * b**2 - a**2 + d) / (2 * a**2))
rp = (d - 3 * a * b + 2 * (a**2 + b**2)) / (2 * a * b)
rm = (d - 3 * a * b - 2 * (a**2 + b**2)) / (2 * a * b)
show("circular printed", rp, rm, rp + rm)
show("circular true minus", -3 - rp, 1 / (1 + rp), 1 / (1 - 3 - rp))
show("gamma degenerate", *[1 / (1 + r) for r in ((2 * a**2 - b**2 + d) / (2 * b**2), (2 * b**2 - a**2 + d) / (2 * a**2))])
show("confocal t for X9", (d - b**2) / c2)
show("dual t", b**2 / (a**2 + b**2))
show("x3 special", sqrt(2 * sqrt(33) + 2) / 2)
show("x4 special", sqrt(2 * sqrt(2) - 1))
roots = polyroots([1, 0, 1, -4, -1, 0, -1], maxsteps=200, extraprec=200)
show("x4 rotated root", *[r.real for r in roots if abs(r.imag) < 1e-30 and r.real > 0])
show("phi", (1 + sqrt(5)) / 2)
rho = mpf("0.4")
show("X7 row at rho=0.4", (2 * rho + 4) / (rho + 4), 3 * rho / (rho + 4), -4 * rho / (rho + 4))
ae, be = (b**2 + d) / a, (a**2 + d) / b
show("excentral closure", a / ae + b / be - 1)

# rho = r/R on one confocal triangle, from the Blaschke cubic solved by mpmath.
ap, bp = ac / a, bc / b
c = sqrt(ap**2 - bp**2)
f, g = -c, c
lam = mp.expjpi(mpf("0.3") / mp.pi)
zs = polyroots([1, -(f + g + lam * f * g), f * g + lam * (f + g), -lam], maxsteps=200, extraprec=200)
pts = [mp.mpc(a * z.real, b * z.imag) for z in zs]
sides = [abs(pts[(i + 1) % 3] - pts[(i + 2) % 3]) for i in range(3)]
s = sum(sides) / 2
area = sqrt(s * (s - sides[0]) * (s - sides[1]) * (s - sides[2]))
R = sides[0] * sides[1] * sides[2] / (4 * area)
show("confocal rho (1.5,1)", (area / s) / R)
