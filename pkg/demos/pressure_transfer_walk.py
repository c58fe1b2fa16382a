"""
Walking the pressure transfer allocator
=======================================

Every cross constraint must be absorbed by a receive stream or a transmit
stream, and each stream only has as many slots as it has leftover antenna
dimensions. Starting from the worst possible allocation (everything on
the receivers), this script watches the transfer engine drain the
overload on a feasible ring, then shows how the same engine gets stuck on
an overloaded ring and converts the stuck tree into an infeasibility
witness.
"""

from iafeas import AllocationPolicy, NetworkConfig, pressures, run_ptt, verify_allocation

ring = NetworkConfig.symmetric(3, 2, 2, 1)
start = AllocationPolicy.all_rx(ring)

print("ring", ring.describe())
print("starting pressures (all constraints on the receive side):")
print(" ", pressures(ring, start).to_dict())

res = run_ptt(ring, start)
print("balanced after", res.transfers, "transfers")
print("final pressures:")
print(" ", pressures(ring, res.alloc).to_dict())
print("certificate:", verify_allocation(ring, res.alloc).certificate)
print("allocation:", res.alloc.to_json_dict())

# Four pairs with the same antennas cannot work: 12 constraints chase
# 8 slots. The engine roots a tree at an overloaded stream, fails to
# find slack anywhere, and the tree's node set is the proof.
ring4 = NetworkConfig.symmetric(4, 2, 2, 1)
res4 = run_ptt(ring4, AllocationPolicy.all_rx(ring4))
print()
print("ring", ring4.describe())
print("stuck after", res4.transfers, "transfers")
print("tree rooted at", res4.tree.root, "with", len(res4.tree.nodes), "cells")
w = res4.witness
print(f"witness: {w.lhs} variable slots against {w.rhs} constraints")
print("witness checks out:", w.holds(ring4))
