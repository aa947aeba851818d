"""
No fair solution below alpha = 2
================================

On the cycle family with paired similarity sets, alpha = 2 always admits a
fair two-center solution, while alpha = 1.5 runs out once the cycle is long
enough.
"""
from eqcenter import OracleBudget, brute_fair_optimum, brute_unfair_optimum, generate_cycle_instance

for m in (4, 8, 12):
    budget = OracleBudget(max_points=2 * m, max_k=2)
    inst = generate_cycle_instance(m)
    unfair = brute_unfair_optimum(inst.d, 2, budget)
    at_two = brute_fair_optimum(inst, budget)
    at_one_half = brute_fair_optimum(inst.replace(alpha=1.5), budget)
    print("m=%2d  unfair %4.1f  fair(alpha=2) %4.1f  fair(alpha=1.5) %s" % (m, unfair, at_two, at_one_half))
