"""Scalar and small-matrix utilities shared across the library.

Two numeric regimes coexist:

* floating point (``float64`` / ``complex128`` ndarrays), used for all
  rank/root/tolerance decisions, and
* exact rational (object ndarrays of :class:`fractions.Fraction`), used
  when inputs are rational and the caller asked for exact arithmetic.

Everything in this module is polynomial, so the same code path serves
both regimes; only norms and tolerance comparisons force a conversion
to float.  Rationals serialize as ``"a/b"`` strings.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

import numpy as np

from .errors import DegenerateInput

__all__ = [
    "vec", "is_exact", "as_float", "norm", "unitize",
    "parse_scalar", "format_scalar", "parse_vector", "vector_payload",
    "proj_normalize", "projective_distance", "projective_equal",
    "det2", "det3", "det4", "compound2", "exact_nullspace",
    "binary_eval", "binary_mul", "binary_roots", "binary_from_root_pairs",
]


def vec(data, exact: bool | None = None):
    """Coerce ``data`` to a 1-d (or 2-d) numpy array.

    ``exact=True`` forces Fractions (object dtype); ``exact=False`` forces
    float64/complex128; ``None`` keeps Fractions if any entry already is one.
    """
    if isinstance(data, np.ndarray) and exact is None:
        return data
    items = np.asarray(data, dtype=object)
    has_fraction = any(isinstance(x, Fraction) for x in items.flat)
    if exact or (exact is None and has_fraction):
        out = np.empty(items.shape, dtype=object)
        for idx, x in np.ndenumerate(items):
            out[idx] = x if isinstance(x, Fraction) else Fraction(x)
        return out
    arr = np.asarray(data)
    if arr.dtype == object:
        arr = np.asarray([complex(x) for x in arr.flat]).reshape(arr.shape)
        if np.all(arr.imag == 0):
            arr = arr.real
    if arr.dtype.kind in "iu":
        arr = arr.astype(np.float64)
    return arr


def is_exact(a) -> bool:
    return isinstance(a, Fraction) or (
        isinstance(a, np.ndarray) and a.dtype == object
    )


def as_float(a):
    """Lossy conversion of a possibly-exact array/scalar to float/complex."""
    if isinstance(a, np.ndarray) and a.dtype == object:
        return np.asarray([float(x) for x in a.flat], dtype=np.float64).reshape(a.shape)
    if isinstance(a, Fraction):
        return float(a)
    return a


def norm(a) -> float:
    return float(np.linalg.norm(np.abs(as_float(np.asarray(a)))))


def unitize(a):
    """Scale a float vector/matrix to unit Euclidean norm.

    Exact arrays are returned unchanged (their residuals are tested against
    exact zero, not a tolerance).
    """
    a = vec(a)
    if is_exact(a):
        return a
    n = norm(a)
    if n == 0.0:
        raise DegenerateInput("cannot normalize a zero vector")
    return a / n


# --- scalar (de)serialization ----------------------------------------------

def parse_scalar(value, exact: bool = False):
    """Parse a JSON-level scalar: number, or ``"a/b"`` rational string."""
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool):
        raise DegenerateInput("booleans are not coordinates")
    if isinstance(value, Integral):
        return Fraction(value) if exact else float(value)
    if isinstance(value, float):
        if exact:
            raise DegenerateInput(
                "exact mode requires integer or 'a/b' coordinates, got float %r" % value
            )
        return value
    raise DegenerateInput("cannot parse scalar %r" % (value,))


def format_scalar(value):
    """Render a scalar for JSON: rationals as strings, floats at 17 digits."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, complex) or (
        isinstance(value, np.generic) and np.iscomplexobj(value)
    ):
        return {"re": format_scalar(float(value.real)),
                "im": format_scalar(float(value.imag))}
    return float(format(float(value), ".17g"))


def parse_vector(values, length: int | None = None, exact: bool = False):
    out = vec([parse_scalar(v, exact=exact) for v in values],
              exact=exact or None)
    if length is not None and out.shape != (length,):
        raise DegenerateInput(
            "expected a vector of length %d, got shape %s" % (length, out.shape)
        )
    return out


def vector_payload(v):
    """JSON payload for a coordinate vector (list of formatted scalars)."""
    return [format_scalar(x) for x in np.asarray(v).tolist()]


# --- projective comparisons -------------------------------------------------

def proj_normalize(v):
    """Divide by the coordinate of largest magnitude (it becomes 1)."""
    v = vec(v)
    if is_exact(v):
        pivot = max(v, key=lambda x: abs(x))
        if pivot == 0:
            raise DegenerateInput("zero vector has no projective class")
        return np.array([x / pivot for x in v], dtype=object)
    i = int(np.argmax(np.abs(v)))
    if v[i] == 0:
        raise DegenerateInput("zero vector has no projective class")
    return v / v[i]


def projective_distance(u, v) -> float:
    """min(|u/|u| - v/|v||, |u/|u| + v/|v||): 0 iff projectively equal."""
    u = as_float(vec(u)).astype(complex)
    v = as_float(vec(v)).astype(complex)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise DegenerateInput("zero vector has no projective class")
    u, v = u / nu, v / nv
    # optimal phase alignment (handles complex scale, reduces to +- for real)
    inner = np.vdot(v, u)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.linalg.norm(u - phase * v))


def projective_equal(u, v, tol: float = 1e-8) -> bool:
    u = vec(u)
    v = vec(v)
    if is_exact(u) and is_exact(v):
        return bool(np.all(proj_normalize(u) == proj_normalize(v)))
    return projective_distance(u, v) <= tol


# --- small exact-capable determinants ----------------------------------------

def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def det4(m):
    total = 0
    for j in range(4):
        minor = [[m[r][c] for c in range(4) if c != j] for r in range(1, 4)]
        term = m[0][j] * det3(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def compound2(m):
    """Second compound matrix: 6x6 of 2x2 minors, row/column pairs ordered
    (01,02,03,12,13,23).  Maps the Pluecker vector of x v y to that of
    Mx v My."""
    m = vec(m)
    out = np.empty((6, 6), dtype=m.dtype if m.dtype != object else object)
    for a, (i, j) in enumerate(_PAIRS):
        for b, (k, l) in enumerate(_PAIRS):
            out[a, b] = m[i, k] * m[j, l] - m[i, l] * m[j, k]
    return out


def exact_nullspace(m):
    """Basis (list of object vectors) of the right nullspace of a rational
    matrix, via fraction-free-ish Gaussian elimination with exact pivots."""
    m = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object)]
    rows, cols = len(m), len(m[0])
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -m[i][fc]
        basis.append(np.array(v, dtype=object))
    return basis


# --- binary forms -------------------------------------------------------------
#
# A binary form of degree d in (s,t) is stored as a coefficient vector
# c[0..d] with  f(s,t) = sum_k c[k] * s^(d-k) * t^k.

def binary_eval(coeffs, s, t):
    d = len(coeffs) - 1
    total = 0
    for k, c in enumerate(coeffs):
        total = total + c * s ** (d - k) * t ** k
    return total


def binary_mul(a, b):
    """Product of two binary forms (coefficient convolution)."""
    a = np.asarray(a, dtype=object) if is_exact(vec(a)) else np.asarray(a)
    b = np.asarray(b, dtype=object) if is_exact(vec(b)) else np.asarray(b)
    out = np.zeros(len(a) + len(b) - 1, dtype=object)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return vec(out.tolist())


def binary_roots(coeffs, zero_tol: float = 1e-13):
    """Projective roots of a binary form as a list of (s, t) pairs.

    Finite roots come from the companion matrix of the dehomogenized
    polynomial (``numpy.roots``); leading coefficients within ``zero_tol``
    of 0 (relative to the largest coefficient) are roots at (1:0).
    """
    c = as_float(vec(coeffs)).astype(complex)
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        raise DegenerateInput("zero binary form has no root set")
    c = c / scale
    lead = 0
    while lead < len(c) - 1 and abs(c[lead]) <= zero_tol:
        lead += 1
    roots = [(1.0 + 0j, 0j)] * lead
    tail = c[lead:]
    if len(tail) > 1:
        for r in np.roots(tail):
            roots.append((complex(r), 1.0 + 0j))
    elif abs(tail[0]) <= zero_tol:
        raise DegenerateInput("zero binary form has no root set")
    return roots


def binary_from_root_pairs(pairs):
    """Binary form (up to scale) with the given projective roots: the
    product of (t_i * s - s_i * t)."""
    form = vec([1.0])
    for (s_i, t_i) in pairs:
        form = binary_mul(form, [t_i, -s_i])
    return form
