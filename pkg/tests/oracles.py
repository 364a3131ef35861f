"""Frozen expected values for the bundled algebras, each computed by hand once."""
from fractions import Fraction

# --- the example algebra: kQ/J^2 on 1 <-> 2 <-> 3 (arrows a:1->2, b:2->1, c:2->3, d:3->2)

# all paths of length <= 1 survive J^2 = 0
EXAMPLE_BASIS = ["e1", "e2", "e3", "a", "b", "c", "d"]
EXAMPLE_DIM = 7
EXAMPLE_NILPOTENCY = 2
# composable pairs, lexicographic by arrow index
EXAMPLE_LENGTH2_PATHS = ["a*b", "a*c", "b*a", "c*d", "d*b", "d*c"]

# P_i = e_i A, I_i = D(A e_i)
PROJECTIVE_DIMS = {1: (1, 1, 0), 2: (1, 1, 1), 3: (0, 1, 1)}
INJECTIVE_DIMS = {1: (1, 1, 0), 2: (1, 1, 1), 3: (0, 1, 1)}

# dim Hom(P1, P2) = dim (P2)_1
HOM_P1_P2 = 1
HOM_S1_S2 = 0
HOM_S1_I1 = 1

# term dimensions of the minimal resolution of S2 (dim P1 = dim P3 = 2, dim P2 = 3)
S2_TERM_DIMS = [3, 4, 6, 8, 12]

# tau on the non-projective indecomposables
TAU_TABLE = {"I1": "S3", "I2": "S2", "I3": "S1", "S2": "P2", "S3": "P1", "S1": "P3"}

# 9 indecomposables, 12 irreducible-map arrows
AR_CLASSES = {"S1", "S2", "S3", "P1", "P2", "P3", "I1", "I2", "I3"}
AR_ARROWS = 12
# middle terms of almost split sequences
AR_MIDDLE = {"S2": {"I1": 1, "I3": 1}, "S3": {"I2": 1}, "S1": {"I2": 1},
             "I1": {"P2": 1}, "I3": {"P2": 1}, "I2": {"P1": 1, "P3": 1}}

# presented endomorphism algebra quiver (6 vertices, 10 arrows)
QB_ARROWS = [(1, 2), (1, 6), (2, 3), (3, 5), (3, 5), (4, 2), (4, 6), (5, 1), (5, 4), (6, 3)]
QB_VERTICES = 6
# gldim = domdim = 3 for the endomorphism algebra
QB_GLDIM = 3
QB_DOMDIM = 3

# --- small controls
LINEAR_A2_DIM = 3
SQUARE_DIM = 9
ONE_LOOP_DIM = 2
RREF_EXAMPLE = ([[2, 4], [1, 2]], [[1, 2], [0, 0]], [0])
KERNEL_EXAMPLE = ([[1, 1]], [Fraction(1), Fraction(-1)])
