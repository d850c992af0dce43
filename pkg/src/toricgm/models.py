"""State spaces, log-linear generator sets, model matrices and the monomial
parametrization map.

States are enumerated in mixed-radix order with the last variable varying
fastest, so binary states read 000, 001, 010, ... and match the usual
probability-subscript convention.  Model matrices are validated on
construction: nonnegative integer entries and equal column sums.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product


@dataclass(frozen=True)
class VariableSpec:
    name: str
    levels: int

    def __post_init__(self):
        if self.levels < 2:
            raise ValueError(f"variable {self.name!r} needs at least 2 levels")


class StateSpace:
    """Ordered discrete variables and their joint state enumeration."""

    __slots__ = ("variables", "_index", "_states")

    def __init__(self, variables):
        variables = tuple(variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.variables = variables
        self._index = {v.name: i for i, v in enumerate(variables)}
        self._states = tuple(product(*[range(v.levels) for v in variables]))

    @property
    def size(self):
        return len(self._states)

    @property
    def names(self):
        return tuple(v.name for v in self.variables)

    def states(self):
        return self._states

    def var_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def state_index(self, state):
        idx = 0
        for value, var in zip(state, self.variables):
            if not 0 <= value < var.levels:
                raise ValueError(f"level {value} out of range for {var.name}")
            idx = idx * var.levels + value
        return idx

    def state_label(self, state):
        if all(v.levels <= 10 for v in self.variables):
            return "".join(str(x) for x in state)
        return ".".join(str(x) for x in state)

    def column_labels(self):
        return tuple(self.state_label(s) for s in self._states)

    def indeterminate_names(self):
        return tuple("p" + lbl for lbl in self.column_labels())

    def __eq__(self, other):
        return isinstance(other, StateSpace) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        spec = ", ".join(f"{v.name}:{v.levels}" for v in self.variables)
        return f"StateSpace({spec})"


def validate_generators(space, generators):
    """Normalized generator list: tuples of names in variable order."""
    norm = []
    for gen in generators:
        gen = tuple(gen)
        if not gen:
            raise ValueError("empty generator")
        for name in gen:
            space.var_index(name)
        ordered = tuple(sorted(set(gen), key=space.var_index))
        if len(ordered) != len(gen):
            raise ValueError(f"repeated variable in generator {gen}")
        norm.append(ordered)
    if len(set(norm)) != len(norm):
        raise ValueError("duplicate generators")
    return tuple(norm)


class ModelMatrix:
    """Nonnegative integer matrix with labeled rows/columns, equal column sums."""

    __slots__ = ("rows", "row_labels", "col_labels", "provenance", "space",
                 "column_degree")

    def __init__(self, rows, row_labels=None, col_labels=None,
                 provenance="raw", space=None):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not rows:
            raise ValueError("model matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("negative entry in model matrix")
        sums = [sum(rows[i][j] for i in range(len(rows))) for j in range(ncols)]
        if len(set(sums)) > 1:
            raise ValueError("column sums differ")
        if row_labels is None:
            row_labels = tuple(f"r{i}" for i in range(len(rows)))
        if col_labels is None:
            col_labels = tuple(f"c{j}" for j in range(ncols))
        if len(row_labels) != len(rows) or len(col_labels) != ncols:
            raise ValueError("label count mismatch")
        self.rows = rows
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.provenance = provenance
        self.space = space
        self.column_degree = sums[0] if sums else 0

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def column_support(self, j):
        return frozenset(i for i, row in enumerate(self.rows) if row[j])

    def apply(self, x):
        """A times a length-ncols vector, exact."""
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.rows)

    def restrict(self, col_indices, row_indices=None):
        """Submatrix on the given columns (and optionally rows), labels kept."""
        col_indices = list(col_indices)
        if row_indices is None:
            row_indices = range(self.nrows)
        row_indices = list(row_indices)
        rows = tuple(tuple(self.rows[i][j] for j in col_indices)
                     for i in row_indices)
        return ModelMatrix(rows,
                           row_labels=tuple(self.row_labels[i] for i in row_indices),
                           col_labels=tuple(self.col_labels[j] for j in col_indices),
                           provenance=self.provenance, space=None)

    def indeterminate_names(self):
        if self.space is not None:
            return self.space.indeterminate_names()
        return tuple("p" + lbl for lbl in self.col_labels)

    def __eq__(self, other):
        return (isinstance(other, ModelMatrix) and self.rows == other.rows
                and self.row_labels == other.row_labels
                and self.col_labels == other.col_labels)

    def __hash__(self):
        return hash((self.rows, self.row_labels, self.col_labels))

    def __repr__(self):
        return (f"ModelMatrix({self.nrows}x{self.ncols}, "
                f"provenance={self.provenance!r})")


def _level_tuples(variables):
    return tuple(product(*[range(v.levels) for v in variables]))


def build_loglinear_matrix(space, generators):
    """0/1 model matrix of a log-linear model.

    Rows are indexed by (generator, level tuple) in generator order, level
    tuples with the last coordinate fastest.  Entry (i, j) is 1 iff state j
    projects onto row i's level tuple.
    """
    gens = validate_generators(space, generators)
    positions = [tuple(space.var_index(n) for n in gen) for gen in gens]
    rows = []
    labels = []
    states = space.states()
    for gen, pos in zip(gens, positions):
        gen_vars = [space.variables[p] for p in pos]
        for level in _level_tuples(gen_vars):
            row = tuple(1 if tuple(s[p] for p in pos) == level else 0
                        for s in states)
            rows.append(row)
            labels.append("{%s}(%s)" % (",".join(gen),
                                        "".join(str(x) for x in level)))
    return ModelMatrix(rows, row_labels=labels,
                       col_labels=space.column_labels(),
                       provenance="loglinear", space=space)


class Distribution:
    """Nonnegative vector over the state space; exact (Fractions) or numeric."""

    __slots__ = ("values", "is_exact")

    def __init__(self, values):
        vals = []
        exact = True
        for x in values:
            if isinstance(x, float):
                exact = False
                vals.append(x)
            else:
                vals.append(Fraction(x))
        if any(x < 0 for x in vals):
            raise ValueError("negative probability")
        self.values = tuple(vals)
        self.is_exact = exact

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def support(self):
        return frozenset(i for i, x in enumerate(self.values) if x != 0)

    def total(self):
        return sum(self.values)

    def normalized(self):
        t = self.total()
        if t == 0:
            raise ValueError("cannot normalize the zero vector")
        return Distribution(tuple(x / t for x in self.values))

    def scaled(self, factor):
        return Distribution(tuple(x * factor for x in self.values))

    def as_floats(self):
        return tuple(float(x) for x in self.values)

    def __eq__(self, other):
        return isinstance(other, Distribution) and self.values == other.values

    def __repr__(self):
        return f"Distribution({self.values!r})"


def monomial_map(A, t):
    """Image of the parameter vector t under the monomial map of A.

    Output j is the product over i of t_i^(a_ij), with 0^0 = 1; exact when
    the parameters are exact.
    """
    if len(t) != A.nrows:
        raise ValueError("parameter vector length must match row count")
    params = [x if isinstance(x, float) else Fraction(x) for x in t]
    if any(x < 0 for x in params):
        raise ValueError("parameters must be nonnegative")
    exact = all(not isinstance(x, float) for x in params)
    out = []
    for j in range(A.ncols):
        val = Fraction(1) if exact else 1.0
        for i in range(A.nrows):
            e = A.rows[i][j]
            if e:
                val = val * params[i] ** e
        out.append(val)
    return Distribution(out)
