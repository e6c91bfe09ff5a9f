import pytest

from braidarr import parse

# The worked examples reused across modules: a 4-node binary tree with
# trunk 4,2,3 and an 8-node ternary tree with trunk 6,4,5.
BINARY_4 = "(4:(2:(3:*,*),(1:*,*)),*)"
TERNARY_8 = "(6:(4:(5:*,*,(8:*,*,*)),(1:*,*,*),*),(3:*,*,*),(2:*,(7:*,*,*),*))"

# Branches of TERNARY_8 as standalone trees.
TERNARY_8_PIECES = [
    "(6:*,(3:*,*,*),(2:*,(7:*,*,*),*))",
    "(4:(5:*,*,(8:*,*,*)),(1:*,*,*),*)",
]

# A three-part collection and the tree gluing builds from it.
GLUE_PARTS = [
    "(6:*,(3:*,*,*),(2:*,*,*))",
    "(7:*,*,*)",
    "(4:(5:*,*,(8:*,*,*)),(1:*,*,*),*)",
]
GLUED = "(7:(6:(4:(5:*,*,(8:*,*,*)),(1:*,*,*),*),(3:*,*,*),(2:*,*,*)),*,*)"

# Disconnected/connected surgery pairs (k = 1): first with the largest
# label deeper in the tree, then with it in the first twig.
SURGERY_DEEP = (
    "(7:(6:(4:(5:*,*,(2:*,*,*)),(8:*,*,*),*),(3:*,*,*),(1:*,*,*)),*,*)",
    "(7:(6:*,(3:(4:(5:*,*,(2:*,*,*)),(8:*,*,*),*),*,*),(1:*,*,*)),*,*)",
)
SURGERY_FIRST_TWIG = (
    BINARY_4,
    "(2:(3:*,(4:*,*)),(1:*,*))",
)

# A labeled 1-Dyck path on [7] with 3 primitive parts and 2 compartments.
DYCK_STEPS = (4, 7, 2, -1, -1, 6, -1, -1, 3, 1, -1, -1, 5, -1)


@pytest.fixture
def binary4():
    return parse(BINARY_4)


@pytest.fixture
def ternary8():
    return parse(TERNARY_8)
