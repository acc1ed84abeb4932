"""Distance symmetry of a square subarray grid.

A square planar array split into a square grid of subarrays has many
subarrays at the same distance from the array center. Constraining every
equidistant subarray to share one phase shrinks the search space
dramatically while keeping the radiated pattern symmetric: the 8x8
subarray grid of the 40x40 benchmark collapses from 64 phase values to 9
distance groups, and the innermost group can be pinned to zero phase
(only phase differences matter), leaving 8 free dimensions.

Run: python3 demos/01_symmetry_groups.py
"""

import numpy as np

from broadbeam import ArrayConfig, build_symmetry_map

for elements in (40, 80):
    config = ArrayConfig(elements, elements, 5, 5, phase_bits=6)
    sym = build_symmetry_map(config)
    n = config.subarrays_x
    print(f"{elements}x{elements} elements -> {n}x{n} subarrays")
    print(f"  distance groups : {sym.group_count}")
    print(f"  free dimensions : {sym.free_count} (group 0 pinned to 0 deg)")
    print(f"  search space    : {config.phase_levels}^{sym.free_count} "
          f"~= 10^{sym.free_count * np.log10(config.phase_levels):.1f}")
    subarrays_per_group = np.bincount(sym.group_of.ravel())
    print(f"  subarrays/group : {subarrays_per_group.tolist()} "
          f"(sum {subarrays_per_group.sum()} = {n * n})")
    sizes = sym.group_sizes(config)
    print(f"  elements/group  : {sizes.tolist()} "
          f"(sum {sizes.sum()} = {config.elements_x * config.elements_y})")
    print()

config = ArrayConfig(40, 40, 5, 5)
sym = build_symmetry_map(config)
print("8x8 subarray grid, group id per subarray (note the 8-fold symmetry):")
print(np.array2string(sym.group_of))
