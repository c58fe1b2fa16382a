"""
Feasibility checkup for four small networks
===========================================

Runs the full verdict pipeline on four configurations that end in four
different ways: a feasible ring decided by the closed form, an overloaded
ring killed by constraint counting, a square two-pair network killed by a
single link's antenna budget, and a gap configuration where every
necessary test passes yet the rank test refuses to certify.
"""

from iafeas import NetworkConfig, feasibility_report

cases = [
    ("tight ring", NetworkConfig.symmetric(3, 2, 2, 1)),
    ("overloaded ring", NetworkConfig.symmetric(4, 2, 2, 1)),
    ("square pair", NetworkConfig.symmetric(2, 3, 3, 2)),
    ("hidden gap", NetworkConfig.from_tuples([(1, 1, 1), (4, 4, 2), (4, 4, 2)])),
]

for name, cfg in cases:
    rep = feasibility_report(cfg, seed=0)
    print(f"{name:16s} {cfg.describe():24s} {rep.verdict:13s} via {rep.rule}")
    if rep.witness is not None:
        w = rep.witness
        print(f"{'':16s} witness: {w.kind} needs {w.rhs}, has {w.lhs}")

# The hidden gap case deserves a closer look: counting is satisfied on
# every subset, but the coefficient matrix drops rank because the single
# antenna pair pins both big pairs into three-dimensional subspaces.
gap = cases[3][1]
rep = feasibility_report(gap, seed=0)
print()
print("gap case necessary checks:", ", ".join(rep.necessary.checks))
print("gap case necessary passed:", rep.necessary.passed)
print("gap case rank:", rep.rank.trial_ranks, "of", rep.rank.C, "rows")
print("verdict stays", rep.verdict, "because nothing may overclaim")
