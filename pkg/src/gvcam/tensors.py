"""Photographic cameras (matrix form) and their multifocal tensors.

A photographic camera is a geometric camera composed with image
coordinates: a rank-3 3x4 matrix A (pinhole, image in P^2) or a pair of
rank-2 2x4 matrices (A, B) (two-slit, image in P^1 x P^1).  The joint
behavior of several such cameras is captured by the classical multifocal
tensors: the 3x3 fundamental matrix, the 2x2x2x2 quadrifocal tensor, and
the mixed 3x2x2 tensor of a pinhole/two-slit pair, for which a single
degree-6 invariant characterizes realizability.
"""

from __future__ import annotations

import importlib.resources
import re
from collections import Counter

import numpy as np

from .errors import (BaseLocus, CoincidentCenters, DegenerateInput,
                     SingularStack)
from .numeric import (as_float, binary_eval, compound2, det3, det4, is_exact,
                      norm, unitize, vec)
from .plucker import LINE_COORD_PAIRS, line_from_points

__all__ = [
    "pinhole_project", "twoslit_project", "pinhole_fiber", "twoslit_fiber",
    "pinhole_center", "twoslit_kernels", "class_beta_project",
    "class_beta_fiber", "fundamental_matrix", "quadrifocal_tensor",
    "quadrifocal_residual", "mixed_epipolar_tensor", "mixed_residual",
    "sextic_invariant", "sextic_relative", "sextic_terms", "tensor_payload",
    "tensor_from_payload",
]

_COMPL3 = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


def _vec_matrix(m, shape, name):
    m = vec(m)
    if m.shape != shape:
        raise DegenerateInput("%s must be %dx%d" % (name, *shape))
    return m


def _check_rank(m, r, name):
    s = np.linalg.svd(as_float(m), compute_uv=False)
    if s[r - 1] <= 1e-12 * s[0]:
        raise DegenerateInput("%s must have rank %d" % (name, r))


def pinhole_center(A):
    """Kernel of a rank-3 3x4 matrix, as a world point."""
    A = _vec_matrix(A, (3, 4), "camera matrix")
    if is_exact(A):
        from .numeric import exact_nullspace
        ker = exact_nullspace(A)
        if len(ker) != 1:
            raise DegenerateInput("camera matrix must have rank 3")
        return vec(ker[0])
    _check_rank(A, 3, "camera matrix")
    return vec(np.linalg.svd(as_float(A))[2][3])


def twoslit_kernels(A, B):
    """The two slit lines of a pair of 2x4 matrices: the kernels of A and
    of B, as Pluecker vectors."""
    A = _vec_matrix(A, (2, 4), "first matrix")
    B = _vec_matrix(B, (2, 4), "second matrix")
    out = []
    for M in (A, B):
        if is_exact(M):
            from .numeric import exact_nullspace
            ker = exact_nullspace(M)
            if len(ker) != 2:
                raise DegenerateInput("slit matrix must have rank 2")
            out.append(line_from_points(vec(ker[0]), vec(ker[1])))
        else:
            _check_rank(M, 2, "slit matrix")
            null = np.linalg.svd(as_float(M))[2][2:]
            out.append(line_from_points(vec(null[0]), vec(null[1])))
    return out[0], out[1]


def _reject_small(img, scale, what):
    if is_exact(img):
        if all(v == 0 for v in img):
            raise BaseLocus(what)
        return img
    if norm(img) <= 1e-12 * scale:
        raise BaseLocus(what)
    return img


def pinhole_project(A, x):
    """Image point Ax in P^2."""
    A = _vec_matrix(A, (3, 4), "camera matrix")
    x = vec(x)
    return _reject_small(vec(A @ x), norm(A) * norm(x),
                         "point is the camera center")


def twoslit_project(pair, x):
    """Image point (Ax, Bx) in P^1 x P^1."""
    A, B = pair
    A = _vec_matrix(A, (2, 4), "first matrix")
    B = _vec_matrix(B, (2, 4), "second matrix")
    x = vec(x)
    u = _reject_small(vec(A @ x), norm(A) * norm(x), "point on the first slit")
    v = _reject_small(vec(B @ x), norm(B) * norm(x), "point on the second slit")
    return u, v


def _wedge_rows(r1, r2):
    return vec([r1[i] * r2[j] - r1[j] * r2[i] for i, j in LINE_COORD_PAIRS])


def pinhole_fiber(A, w):
    """Line of sight over the image point w = (w0:w1:w2):
    w0 (A1 ^ A2) - w1 (A0 ^ A2) + w2 (A0 ^ A1).

    The wedge A_i ^ A_j is the line dual to the intersection of the two
    row planes, expressed in primal coordinates; the alternating sum makes
    x land on fiber(Ax) for every x.
    """
    A = _vec_matrix(A, (3, 4), "camera matrix")
    w = vec(w)
    d12 = _wedge_rows(A[1], A[2])
    d02 = _wedge_rows(A[0], A[2])
    d01 = _wedge_rows(A[0], A[1])
    from .plucker import dual_line
    out = vec(w[0] * dual_line(d12) - w[1] * dual_line(d02)
              + w[2] * dual_line(d01))
    return _reject_small(out, norm(A) ** 2 * norm(w), "image point has no fiber")


def _inverse4(m):
    if not is_exact(m):
        return np.linalg.inv(as_float(m))
    d = det4(m)
    if d == 0:
        raise SingularStack("stacked matrix is singular")
    adj = np.empty((4, 4), dtype=object)
    idx = (0, 1, 2, 3)
    for i in range(4):
        rows = [r for r in idx if r != i]
        for j in range(4):
            cols = [c for c in idx if c != j]
            minor = [[m[r][c] for c in cols] for r in rows]
            adj[j, i] = (-1) ** (i + j) * det3(minor)
    return adj / d if adj.dtype != object else np.array(
        [[adj[a][b] / d for b in range(4)] for a in range(4)], dtype=object)


def twoslit_fiber(pair, u, v):
    """Viewing line of a two-slit pair over the image point (u, v):
    the bilinear combination u0v0 D[:,1] + u0v1 D[:,2] + u1v0 D[:,3]
    + u1v1 D[:,4] of columns of the second compound of [A; B]^{-1}."""
    A, B = pair
    A = _vec_matrix(A, (2, 4), "first matrix")
    B = _vec_matrix(B, (2, 4), "second matrix")
    stack = np.vstack([A, B])
    if not is_exact(stack):
        s = np.linalg.svd(as_float(stack), compute_uv=False)
        if s[3] <= 1e-12 * s[0]:
            raise SingularStack("stacked [A; B] is singular "
                                "(slits meet or matrices degenerate)")
    D = compound2(_inverse4(stack))
    u, v = vec(u), vec(v)
    out = vec(u[0] * v[0] * D[:, 1] + u[0] * v[1] * D[:, 2]
              + u[1] * v[0] * D[:, 3] + u[1] * v[1] * D[:, 4])
    return _reject_small(out, float(np.max(np.abs(as_float(D))))
                         * norm(u) * norm(v), "image point has no fiber")


_CANON_A = np.array([[1.0, 0, 0, 0], [0.0, 1, 0, 0]])
_CANON_B = np.array([[0.0, 0, 1, 0], [0.0, 0, 0, 1]])


def class_beta_project(f, g, h, x, A=None, B=None):
    """Photographic camera of the (1, beta) congruence with base line
    V(x0,x1) and curve (s f : t f : g : h): image in P^1 x P^1 is
    (Ax, (g(Ax) - f(Ax) B_1 x, h(Ax) - f(Ax) B_2 x)).

    A and B default to the coordinate selections ((x0,x1), (x2,x3));
    custom choices change image coordinates, not the fibers.
    """
    A = _CANON_A if A is None else _vec_matrix(A, (2, 4), "A")
    B = _CANON_B if B is None else _vec_matrix(B, (2, 4), "B")
    f, g, h = vec(f), vec(g), vec(h)
    x = vec(x)
    u = _reject_small(vec(A @ x), norm(A) * norm(x), "point on the base line")
    fv = binary_eval(f, u[0], u[1])
    w = B @ x
    v = vec([binary_eval(g, u[0], u[1]) - fv * w[0],
             binary_eval(h, u[0], u[1]) - fv * w[1]])
    scale = 1.0 if is_exact(v) else (
        norm(x) ** len(g) * max(norm(f), norm(g), norm(h)))
    v = _reject_small(v, scale, "point on the focal curve")
    return u, v


def class_beta_fiber(f, g, h, u, v):
    """Fiber of :func:`class_beta_project` (canonical A, B) over (u, v):
    the join of the curve point (u0 f : u1 f : g : h)(u) with the base-line
    point (0 : 0 : v0 : v1)."""
    f, g, h = vec(f), vec(g), vec(h)
    u, v = vec(u), vec(v)
    fv = binary_eval(f, u[0], u[1])
    y = vec([u[0] * fv, u[1] * fv,
             binary_eval(g, u[0], u[1]), binary_eval(h, u[0], u[1])])
    zero = 0 if is_exact(v) else 0.0
    z = vec([zero, zero, v[0], v[1]])
    return line_from_points(y, z)


# --------------------------------------------------------------------------
# multifocal tensors

def fundamental_matrix(A, B):
    """3x3 tensor F with F[l, i] = (-1)^{i+l} det[A_j; A_k; B_m; B_n],
    (j,k) and (m,n) the increasing complements of i and l, oriented so
    that (Bx)^T F (Ax) = 0."""
    A = _vec_matrix(A, (3, 4), "first camera")
    B = _vec_matrix(B, (3, 4), "second camera")
    F = np.empty((3, 3), dtype=object if is_exact(A) or is_exact(B) else None)
    for l in range(3):
        m, n = _COMPL3[l]
        for i in range(3):
            j, k = _COMPL3[i]
            F[l, i] = (-1) ** (i + l) * det4([A[j], A[k], B[m], B[n]])
    F = vec(F)
    if is_exact(F):
        if all(v == 0 for v in F.ravel()):
            raise CoincidentCenters("cameras share their center")
        return F
    scale = norm(A) ** 2 * norm(B) ** 2
    if norm(F) <= 1e-12 * scale:
        raise CoincidentCenters("cameras share their center")
    return F


def quadrifocal_tensor(A, B, C, D):
    """2x2x2x2 tensor of two two-slit cameras (A,B), (C,D):
    f[i,j,k,l] = (-1)^{i+j+k+l} det[A_other(i); B_other(j); C_other(k);
    D_other(l)]; contracting with (Ax, Bx, Cx, Dx) gives zero."""
    mats = [_vec_matrix(M, (2, 4), "slit matrix") for M in (A, B, C, D)]
    exact = any(is_exact(M) for M in mats)
    T = np.empty((2, 2, 2, 2), dtype=object if exact else None)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    T[i, j, k, l] = (-1) ** (i + j + k + l) * det4(
                        [mats[0][1 - i], mats[1][1 - j],
                         mats[2][1 - k], mats[3][1 - l]])
    return vec(T)


def quadrifocal_residual(T, u, v, w, z) -> float:
    """Normalized contraction of the quadrifocal tensor with one image
    point per factor; zero iff the four points correspond."""
    T = as_float(vec(T))
    vecs = [unitize(as_float(vec(a))) for a in (u, v, w, z)]
    val = np.einsum("ijkl,i,j,k,l", T, *vecs)
    return abs(float(val)) / norm(T)


def mixed_epipolar_tensor(A, B, C):
    """3x2x2 tensor of a pinhole A and a two-slit (B, C):
    f[i,j,k] = (-1)^{i+j+k} det[A_l; A_m; B_other(j); C_other(k)] with
    (l,m) the increasing complement of i; contracting with
    (Ax, Bx, Cx) gives zero."""
    A = _vec_matrix(A, (3, 4), "pinhole matrix")
    B = _vec_matrix(B, (2, 4), "first slit matrix")
    C = _vec_matrix(C, (2, 4), "second slit matrix")
    exact = is_exact(A) or is_exact(B) or is_exact(C)
    T = np.empty((3, 2, 2), dtype=object if exact else None)
    for i in range(3):
        l, m = _COMPL3[i]
        for j in range(2):
            for k in range(2):
                T[i, j, k] = (-1) ** (i + j + k) * det4(
                    [A[l], A[m], B[1 - j], C[1 - k]])
    return vec(T)


def mixed_residual(T, u, v, w) -> float:
    """Normalized contraction sum_ijk T[i,j,k] u_i v_j w_k."""
    T = as_float(vec(T))
    vecs = [unitize(as_float(vec(a))) for a in (u, v, w)]
    val = np.einsum("ijk,i,j,k", T, *vecs)
    return abs(float(val)) / norm(T)


# --------------------------------------------------------------------------
# the degree-6 invariant of 3x2x2 tensors

#: each term: (integer coefficient, 18-character key = six index triples).
_SEXTIC_TERMS = (
    (1, "000000101110211211"), (-1, "000000101111210211"), (-1, "000000110111201211"),
    (1, "000000111111201210"), (-1, "000001100110211211"), (1, "000001100111210211"),
    (-1, "000001101110210211"), (1, "000001101111210210"), (1, "000001110110201211"),
    (1, "000001110111200211"), (-1, "000001110111201210"), (-1, "000001111111200210"),
    (-1, "000010100101211211"), (1, "000010100111201211"), (1, "000010101101210211"),
    (-1, "000010101110201211"), (1, "000010101111200211"), (-1, "000010101111201210"),
    (1, "000010110111201201"), (-1, "000010111111200201"), (1, "000011100101210211"),
    (1, "000011100110201211"), (-2, "000011100111201210"), (-1, "000011101101210210"),
    (-2, "000011101110200211"), (2, "000011101110201210"), (1, "000011101111200210"),
    (-1, "000011110110201201"), (1, "000011110111200201"), (1, "001001100110210211"),
    (-1, "001001100111210210"), (-1, "001001110110200211"), (1, "001001110111200210"),
    (1, "001010100100211211"), (-1, "001010100101210211"), (-1, "001010100110201211"),
    (1, "001010111111200200"), (2, "001010100111201210"), (2, "001010101110200211"),
    (-1, "001010101111200210"), (-2, "001010100111200211"), (-1, "001010110111200201"),
    (-1, "001011100100210211"), (1, "001011100110200211"), (1, "001011100101210210"),
    (-1, "001011100110201210"), (1, "001011100111200210"), (-1, "001011101110200210"),
    (1, "001011110110200201"), (-1, "001011110111200200"), (1, "010010100101201211"),
    (-1, "010010100111201201"), (-1, "010010101101200211"), (1, "010010101111200201"),
    (-1, "010011100100201211"), (1, "010011100101200211"), (-1, "010011100101201210"),
    (1, "010011100110201201"), (1, "010011100111200201"), (1, "010011101101200210"),
    (-1, "010011101110200201"), (-1, "010011101111200200"), (1, "011011100100201210"),
    (-1, "011011100101200210"), (-1, "011011100110200201"), (1, "011011101110200200"),
)


def sextic_terms():
    """The 66 monomials of the invariant as (coefficient, six (i,j,k)
    entry indices) pairs."""
    out = []
    for c, key in _SEXTIC_TERMS:
        idx = tuple((int(key[t]), int(key[t + 1]), int(key[t + 2]))
                    for t in range(0, 18, 3))
        out.append((c, idx))
    return out


_TERMS_CACHE = None


def _terms():
    global _TERMS_CACHE
    if _TERMS_CACHE is None:
        _TERMS_CACHE = sextic_terms()
    return _TERMS_CACHE


def sextic_invariant(T):
    """Degree-6 invariant of a 3x2x2 tensor; vanishes exactly on tensors
    of pinhole/two-slit camera pairs.  Scaling T by lam scales the value
    by lam^6; row operations scale it by det^2 x det^3 x det^3."""
    T = vec(T)
    if T.shape != (3, 2, 2):
        raise DegenerateInput("expected a 3x2x2 tensor")
    total = 0
    for c, idx in _terms():
        prod = c
        for (i, j, k) in idx:
            prod = prod * T[i, j, k]
        total = total + prod
    return total


def sextic_relative(T) -> float:
    """Cancellation residual |S(T)| / max_term |term(T)|: near zero on
    camera tensors, order one on generic tensors."""
    T = as_float(vec(T))
    if T.shape != (3, 2, 2):
        raise DegenerateInput("expected a 3x2x2 tensor")
    vals = []
    for c, idx in _terms():
        prod = float(c)
        for (i, j, k) in idx:
            prod *= float(T[i, j, k])
        vals.append(prod)
    scale = max(abs(v) for v in vals)
    if scale == 0.0:
        return 0.0
    return abs(sum(vals)) / scale


def parse_sextic_text(text: str):
    """Parse the checked-in plain-text form of the invariant (one term per
    line: '<coeff> f<ijk>[^e] ...') into (coefficient, indices) pairs."""
    out = []
    fac_re = re.compile(r"f(\d)(\d)(\d)(?:\^(\d))?$")
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            coeff = int(parts[0])
        except ValueError:
            raise DegenerateInput("bad coefficient %r" % parts[0]) from None
        idx = []
        for tok in parts[1:]:
            mt = fac_re.match(tok)
            if mt is None:
                raise DegenerateInput("bad factor %r" % tok)
            i, j, k = (int(mt.group(t)) - 1 for t in (1, 2, 3))
            e = int(mt.group(4) or 1)
            idx.extend([(i, j, k)] * e)
        out.append((coeff, tuple(idx)))
    return out


def packaged_sextic_terms():
    """Term list re-parsed from the packaged text fixture (used to guard
    the hard-coded table against transcription drift)."""
    text = (importlib.resources.files("gvcam") / "data"
            / "sextic_terms.txt").read_text()
    return parse_sextic_text(text)


def same_polynomial(terms_a, terms_b) -> bool:
    """Equality of two term lists as polynomials (order-insensitive)."""
    def canon(terms):
        return Counter({tuple(sorted(idx)): c for c, idx in terms}.items())
    return canon(terms_a) == canon(terms_b)


# --------------------------------------------------------------------------
# serialization

_TENSOR_SHAPES = {"fundamental": (3, 3), "quadrifocal": (2, 2, 2, 2),
                  "mixed": (3, 2, 2)}


def tensor_payload(kind: str, T):
    """JSON-ready dict {"kind", "entries"} for a multifocal tensor; exact
    entries serialize as integer/rational strings, floats as floats."""
    from .numeric import format_scalar

    def conv(a):
        if isinstance(a, np.ndarray) and a.ndim > 1:
            return [conv(row) for row in a]
        if isinstance(a, np.ndarray):
            return [format_scalar(x) for x in a.tolist()]
        return format_scalar(a)

    if kind not in _TENSOR_SHAPES:
        raise DegenerateInput("unknown tensor kind %r" % kind)
    T = vec(T)
    if T.shape != _TENSOR_SHAPES[kind]:
        raise DegenerateInput("entries do not form a %s tensor" % kind)
    return {"kind": kind, "entries": conv(T)}


def tensor_from_payload(data, exact: bool = False):
    from .numeric import parse_scalar

    def conv(a):
        if isinstance(a, list) and a and isinstance(a[0], list):
            return [conv(row) for row in a]
        return [parse_scalar(x, exact=exact) for x in a]

    kind = data.get("kind")
    if kind not in _TENSOR_SHAPES:
        raise DegenerateInput("unknown tensor kind %r" % kind)
    T = vec(conv(data["entries"]), exact=exact or None)
    if T.shape != _TENSOR_SHAPES[kind]:
        raise DegenerateInput("entries do not form a %s tensor" % kind)
    return kind, T
