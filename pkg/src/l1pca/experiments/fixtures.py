"""Reference matrices for the deterministic restoration experiment.

A rank-2 matrix of eight five-dimensional sensor samples, a corrupted
copy with six entries of two samples overwritten, and the expected
rank-2 projections of the corrupted data under the L2 and L1 subspaces.
All values carry four decimals, so comparisons against them are
meaningful to about 5e-4.
"""

import numpy as np

RESTORE_TRUE = np.array([
    [2.0724, -1.2024, 1.2956, 2.8719, 1.5637, -2.9323, -3.1792, -1.4152],
    [-0.5233, 0.2595, -0.3298, -0.7562, -0.4087, 0.7973, 0.8235, 0.4155],
    [0.0185, -0.8158, -0.0367, -0.5406, -0.2380, 1.0108, 0.3502, 1.0487],
    [-0.6424, 0.1476, -0.4151, -1.0486, -0.5552, 1.1989, 1.0913, 0.7355],
    [-2.1289, 2.2734, -1.2687, -2.2200, -1.2814, 1.6751, 2.7777, 0.0851],
])

RESTORE_CORRUPTED = np.array([
    [2.0724, 8.9538, 1.2956, 2.8719, 10.6817, -2.9323, -3.1792, -1.4152],
    [-0.5233, 10.6187, -0.3298, -0.7562, 11.0235, 0.7973, 0.8235, 0.4155],
    [0.0185, 11.3050, -0.0367, -0.5406, -0.2380, 1.0108, 0.3502, 1.0487],
    [-0.6424, 0.1476, -0.4151, -1.0486, 7.8846, 1.1989, 1.0913, 0.7355],
    [-2.1289, 2.2734, -1.2687, -2.2200, -1.2814, 1.6751, 2.7777, 0.0851],
])

RESTORE_EXPECTED_L2 = np.array([
    [0.8029, 8.2311, 0.4919, 0.9945, 11.8445, -0.9197, -1.1528, -0.3268],
    [0.4839, 11.0891, 0.2888, 0.5096, 10.2500, -0.3897, -0.6347, -0.0285],
    [-0.5922, 11.1679, -0.3843, -0.9862, 0.0165, 1.1412, 1.0192, 0.7148],
    [0.6521, 0.8969, 0.4067, 0.8926, 6.6810, -0.9024, -0.9930, -0.4245],
    [-0.3868, 2.8347, -0.2455, -0.5789, -2.2540, 0.6257, 0.6220, 0.3444],
])

RESTORE_EXPECTED_L1 = np.array([
    [2.0724, -0.0303, 1.2956, 2.8719, 2.9321, -2.9323, -3.1792, -1.4152],
    [-0.5233, 0.1880, -0.3298, -0.7562, -0.7283, 0.7973, 0.8235, 0.4155],
    [0.0185, 3.2915, -0.0367, -0.5406, 0.2476, 1.0108, 0.3502, 1.0487],
    [-0.6424, 0.9300, -0.4151, -1.0486, -0.8469, 1.1989, 1.0913, 0.7355],
    [-2.1289, -4.2139, -1.2687, -2.2200, -3.2976, 1.6751, 2.7777, 0.0851],
])

PRINT_TOLERANCE = 5e-4

for _m in (RESTORE_TRUE, RESTORE_CORRUPTED, RESTORE_EXPECTED_L2, RESTORE_EXPECTED_L1):
    _m.setflags(write=False)
