"""
Quickstart: fair k-center on random points
==========================================

Draw a small point cloud, give every point a set of similar points, and
compare a fairness-unaware clustering with the fair solvers.
"""
import numpy as np

from eqcenter import Mode, check_fairness, evaluate, generate_random_instance, gonzalez, solve

# 60 points in the unit square, k=4, points must be served within a factor 2
# of the best-served point they consider similar
inst = generate_random_instance(60, 4, alpha=2.0, variant="pp", seed=1)
print("points:", inst.n, " largest similarity radius:", round(inst.sim.r_max, 3))

# farthest-first traversal ignores the similarity sets
plain = gonzalez(inst.d, inst.k)
rep = evaluate(inst, plain)
print("gonzalez   value %.3f  unfair points %4.1f%%" % (plain.value, 100 * rep.violation_fraction_pp))

# the fair solver pays some radius for zero violations
fair = solve(inst)
rep = evaluate(inst, fair)
print("alg-pp     value %.3f  unfair points %4.1f%%" % (fair.value, 100 * rep.violation_fraction_pp))
print("           worst ratio f_pp = %.3f" % rep.max_f_pp_strict)

# the pseudo mode may open up to 2k centers
pseudo = solve(inst, Mode.PSEUDO_POF)
print("pseudo-pof value %.3f  centers %d (k=%d)" % (pseudo.value, len(pseudo.centers), inst.k))

# a PP-fair solution is also fair under the averaged constraint
assert check_fairness(inst, fair).ok and check_fairness(inst, fair, "ag").ok
print("per-point distances:", np.round(fair.distances(inst.d)[:8], 3), "...")
