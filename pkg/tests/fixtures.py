"""Shared fixtures: standard graphs, printed matrices and binomial sets."""

from itertools import product

from toricgm.graphs import binary_graph, build_graph_matrix
from toricgm.polynomials import Binomial

BIN3 = ["".join(map(str, s)) for s in product((0, 1), repeat=3)]
BIN4 = ["".join(map(str, s)) for s in product((0, 1), repeat=4)]
IDX4 = {s: i for i, s in enumerate(BIN4)}
IDX3 = {s: i for i, s in enumerate(BIN3)}


def three_chain():
    return binary_graph(["X1", "X2", "X3"], [("X1", "X2"), ("X2", "X3")])


def four_chain():
    return binary_graph(["X1", "X2", "X3", "X4"],
                        [("X1", "X2"), ("X2", "X3"), ("X3", "X4")])


def four_cycle():
    return binary_graph(["X1", "X2", "X3", "X4"],
                        [("X1", "X2"), ("X2", "X3"), ("X3", "X4"), ("X1", "X4")])


def five_cycle():
    return binary_graph(["X1", "X2", "X3", "X4", "X5"],
                        [("X1", "X2"), ("X2", "X3"), ("X3", "X4"),
                         ("X4", "X5"), ("X1", "X5")])


def octahedron():
    names = [f"X{i}" for i in range(1, 7)]
    edges = [(f"X{i}", f"X{j}") for i in range(1, 7) for j in range(i + 1, 7)
             if j - i != 3]
    return binary_graph(names, edges)


def binomial4(us, vs):
    """Quartic-ring binomial from lists of four-bit state strings."""
    u = [0] * 16
    v = [0] * 16
    for s in us:
        u[IDX4[s]] += 1
    for s in vs:
        v[IDX4[s]] += 1
    return Binomial(tuple(u), tuple(v))


def binomial3(us, vs):
    u = [0] * 8
    v = [0] * 8
    for s in us:
        u[IDX3[s]] += 1
    for s in vs:
        v[IDX3[s]] += 1
    return Binomial(tuple(u), tuple(v))


# The two conditional-independence binomials of the binary three-chain.
THREE_CHAIN_BINOMIALS = [
    binomial3(("001", "100"), ("000", "101")),
    binomial3(("011", "110"), ("010", "111")),
]

# The eight pairwise-independence binomials of the binary four-cycle.
FOUR_CYCLE_PAIRWISE = [
    binomial4(("1011", "1110"), ("1010", "1111")),
    binomial4(("0111", "1101"), ("0101", "1111")),
    binomial4(("1001", "1100"), ("1000", "1101")),
    binomial4(("0110", "1100"), ("0100", "1110")),
    binomial4(("0011", "1001"), ("0001", "1011")),
    binomial4(("0011", "0110"), ("0010", "0111")),
    binomial4(("0001", "0100"), ("0000", "0101")),
    binomial4(("0010", "1000"), ("0000", "1010")),
]

# The eight quartic cross-product-ratio binomials of the binary four-cycle,
# keyed by the edge whose association they tie across the opposite pair.
FOUR_CYCLE_QUARTICS = {
    "f12diff": binomial4(("0100", "0111", "1001", "1010"),
                         ("0101", "0110", "1000", "1011")),
    "f23diff": binomial4(("0010", "0101", "1011", "1100"),
                         ("0011", "0100", "1010", "1101")),
    "f34diff": binomial4(("0001", "0110", "1010", "1101"),
                         ("0010", "0101", "1001", "1110")),
    "f14diff": binomial4(("0001", "0111", "1010", "1100"),
                         ("0011", "0101", "1000", "1110")),
    "f12same": binomial4(("0000", "0011", "1101", "1110"),
                         ("0001", "0010", "1100", "1111")),
    "f23same": binomial4(("0000", "0111", "1001", "1110"),
                         ("0001", "0110", "1000", "1111")),
    "f34same": binomial4(("0000", "0111", "1011", "1100"),
                         ("0011", "0100", "1000", "1111")),
    "f14same": binomial4(("0000", "0110", "1011", "1101"),
                         ("0010", "0100", "1001", "1111")),
}

FOUR_CYCLE_SIXTEEN = FOUR_CYCLE_PAIRWISE + list(FOUR_CYCLE_QUARTICS.values())

# The twelve pairwise-independence binomials of the binary four-chain.
FOUR_CHAIN_PAIRWISE = [
    binomial4(("0010", "1000"), ("0000", "1010")),
    binomial4(("0001", "1000"), ("0000", "1001")),
    binomial4(("0001", "0100"), ("0000", "0101")),
    binomial4(("0011", "1001"), ("0001", "1011")),
    binomial4(("0011", "1010"), ("0010", "1011")),
    binomial4(("0011", "0110"), ("0010", "0111")),
    binomial4(("0110", "1100"), ("0100", "1110")),
    binomial4(("0101", "1100"), ("0100", "1101")),
    binomial4(("1001", "1100"), ("1000", "1101")),
    binomial4(("0111", "1101"), ("0101", "1111")),
    binomial4(("0111", "1110"), ("0110", "1111")),
    binomial4(("1011", "1110"), ("1010", "1111")),
]

# Support of the uniform eight-atom limit distribution on the four-cycle.
MOUSSOURIS_SUPPORT = ["0000", "0001", "1000", "0011", "1100", "0111", "1110", "1111"]

# The degree-eight witness on the octahedron model (six binary variables).
OCTAHEDRON_U = ["000000", "000101", "010001", "010100",
                "101011", "101110", "111010", "111111"]
OCTAHEDRON_V = ["000001", "000100", "010000", "010101",
                "101010", "101111", "111011", "111110"]

# 12x8 matrix of the no-three-way-interaction model (three binary factors).
NO_THREE_WAY_MATRIX = [
    [1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [1, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 1],
]

# 16x16 binary four-cycle matrix, rows grouped by clique in canonical
# (lexicographic) clique order {1,2} < {1,4} < {2,3} < {3,4}, level tuples
# with the last coordinate fastest.
_R = {
    "12": {"00": "1111000000000000", "01": "0000111100000000",
           "10": "0000000011110000", "11": "0000000000001111"},
    "23": {"00": "1100000011000000", "01": "0011000000110000",
           "10": "0000110000001100", "11": "0000001100000011"},
    "34": {"00": "1000100010001000", "01": "0100010001000100",
           "10": "0010001000100010", "11": "0001000100010001"},
    "14": {"00": "1010101000000000", "01": "0101010100000000",
           "10": "0000000010101010", "11": "0000000001010101"},
}
FOUR_CYCLE_MATRIX = [
    [int(c) for c in _R[clique][level]]
    for clique in ("12", "14", "23", "34")
    for level in ("00", "01", "10", "11")
]

FOUR_CYCLE_COUNTS = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 0, 0, 0, 0]


def four_cycle_matrix():
    return build_graph_matrix(four_cycle())
