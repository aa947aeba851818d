"""
The price of fairness can be unbounded
======================================

Two tight pairs far apart, each point similar only to its partner.
"""
from eqcenter import (
    OracleBudget,
    brute_fair_optimum,
    brute_unfair_optimum,
    check_fairness,
    generate_pof_instance,
    gonzalez,
    solve,
)

for big_d in (2.0, 10.0, 100.0):
    inst = generate_pof_instance(1.0, big_d)
    unfair = brute_unfair_optimum(inst.d, inst.k)
    fair = brute_fair_optimum(inst, OracleBudget())
    print("D=%6.1f  unfair optimum %.1f  fair optimum %6.1f  ratio %6.1f" % (big_d, unfair, fair, fair / unfair))

# why: with one center per pair, the center's partner is compared against 0
inst = generate_pof_instance(1.0, 10.0)
cheap = gonzalez(inst.d, 2)
print("\nnearest-center solution", cheap, "violators", check_fairness(inst, cheap).violators)

# the fair solution sends everyone to the other pair's center
sol = solve(inst)
print("fair solution", sol, "assignment", sol.assignment.tolist())
