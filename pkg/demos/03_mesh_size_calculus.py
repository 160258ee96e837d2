"""Pick a mesh size from a miss-probability budget, then verify it empirically.

For a rectangular crack cross-section of area A, a randomly placed copy
misses the lattice delta*Z^2 with probability below delta^2/4 * (1+eps)/A.
Inverting at level alpha gives the largest safe mesh. The Monte Carlo runs
place the rectangle under uniform random rotation and translation and count
actual misses against that bound.
"""

from crackscan import CrackGeometry, delta_max, simulate_miss_probability

length, width = 50.0, 3.0
print(f"crack cross-section: {length:g} x {width:g} px (area {length * width:g}), eps=0.1\n")

print(f"{'alpha':>8} {'delta_max':>10}")
for alpha in (0.005, 0.01, 0.02, 0.05, 0.1, 0.2):
    geom = CrackGeometry(length=length, width=width, epsilon=0.1, alpha=alpha)
    print(f"{alpha:>8g} {delta_max(geom):>10d}")

print(f"\n{'delta':>6} {'bound':>10} {'empirical':>10}   (100k placements each)")
geom = CrackGeometry(length=length, width=width, epsilon=0.1)
for delta in (2, 3, 4, 5, 6, 8):
    bound = delta * delta * (1 + geom.epsilon) / (4 * geom.area)
    rate = simulate_miss_probability(geom, delta, trials=100_000, seed=1)
    print(f"{delta:>6d} {bound:>10.5f} {rate:>10.5f}")

print(
    "\nwidth >= delta*sqrt(2) can never miss: a rectangle that thick always"
    " contains a lattice point, so small meshes show rate 0."
)
