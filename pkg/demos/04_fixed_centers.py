"""
Assigning points to fixed centers
=================================

Nearest-center assignment is not fair in general.  Given the centers, the
iterative repair finds the best fair assignment, and the trace shows every
point's distance only ever shrinking.
"""
import numpy as np

from eqcenter import check_fairness, generate_random_instance, optimal_assignment, optimal_value_for_centers
from eqcenter.baseline import nearest_center_assignment
from eqcenter.instance import Solution

inst = generate_random_instance(8, 3, alpha=2.0, variant="pp", seed=9)
centers = [1, 2, 6]

near = Solution.from_assignment(inst.d, nearest_center_assignment(inst.d, centers), centers)
print("nearest center: value %.3f violators %s" % (near.value, check_fairness(inst, near).violators))

value, fair = optimal_value_for_centers(inst, centers)
print("best fair:      value %.3f violators %s" % (value, check_fairness(inst, fair).violators))

trace = []
optimal_assignment(inst, centers, value, trace)
print("\ndistance per point at each step:")
print(np.round(np.array(trace), 3))
