"""Brute-force references for the sumcheck quantities.

Everything here works from dense matrices over H and product-form Lagrange
polynomials, with no FFTs and nothing shared with the prover beyond the
padded matrices themselves.  Quadratic or worse; only for |H| <= 16.
"""

from auditmpc.algebra import Q, root_of_unity


def inv(a):
    return pow(a % Q, Q - 2, Q)


def h_elements(H):
    w = root_of_unity(H)
    return [pow(w, i, Q) for i in range(H)]


def lag(el, c, x):
    num, den = 1, 1
    for j, e in enumerate(el):
        if j != c:
            num = num * (x - e) % Q
            den = den * (el[c] - e) % Q
    return num * inv(den) % Q


def dense(P, name):
    M = [[0] * P.H for _ in range(P.H)]
    for r, c, v in P.matrices[name]:
        M[r][c] = (M[r][c] + v) % Q
    return M


def vanish(el, x):
    out = 1
    for e in el:
        out = out * (x - e) % Q
    return out


def r_biv(el, x, y):
    """(v_H(x) - v_H(y)) / (x - y), or its derivative form on the diagonal."""
    if x % Q == y % Q:
        return len(el) * pow(x, len(el) - 1, Q) % Q
    return (vanish(el, x) - vanish(el, y)) * inv(x - y) % Q


def m_hat(el, M, x, y):
    lx = [lag(el, r, x) for r in range(len(el))]
    ly = [lag(el, c, y) for c in range(len(el))]
    return sum(M[r][c] * lx[r] % Q * ly[c] for r in range(len(el)) for c in range(len(el))
               if M[r][c]) % Q


def sigma2(P, eta, alpha, beta1):
    el = h_elements(P.H)
    tot = 0
    for e, name in zip(eta, "ABC"):
        M = dense(P, name)
        for k in range(P.H):
            row = sum(M[k][c] * lag(el, c, beta1) for c in range(P.H) if M[k][c]) % Q
            tot += e * r_biv(el, alpha, el[k]) % Q * row
    return tot % Q


def sigma3(P, eta, beta1, beta2):
    el = h_elements(P.H)
    return sum(e * m_hat(el, dense(P, name), beta2, beta1) for e, name in zip(eta, "ABC")) % Q


def lincheck_terms(P, eta, alpha, z_h, za_h, zb_h):
    """(r(alpha, h) * (eta_A za + eta_B zb + eta_C za zb)(h),  t(h) * z(h)) over H.

    za_h, zb_h are the claimed A z and B z; the C row uses their product.
    """
    el = h_elements(P.H)
    mats = [dense(P, n) for n in "ABC"]
    ra = [r_biv(el, alpha, k) for k in el]
    left, right = [], []
    for h in range(P.H):
        zc = za_h[h] * zb_h[h] % Q
        left.append(ra[h] * (eta[0] * za_h[h] + eta[1] * zb_h[h] + eta[2] * zc) % Q)
        t = sum(e * sum(ra[k] * M[k][h] for k in range(P.H)) for e, M in zip(eta, mats)) % Q
        right.append(t * z_h[h] % Q)
    return left, right


def mat_vec(P, name, z_h):
    M = dense(P, name)
    return [sum(M[r][c] * z_h[c] for c in range(P.H)) % Q for r in range(P.H)]


def sigma1_sum(P, eta, alpha, z_h, s_on_h, za_h=None, zb_h=None):
    za_h = za_h if za_h is not None else mat_vec(P, "A", z_h)
    zb_h = zb_h if zb_h is not None else mat_vec(P, "B", z_h)
    left, right = lincheck_terms(P, eta, alpha, z_h, za_h, zb_h)
    return sum(s + l - r for s, l, r in zip(s_on_h, left, right)) % Q


def t_at(P, eta, alpha, x):
    el = h_elements(P.H)
    tot = 0
    for e, name in zip(eta, "ABC"):
        M = dense(P, name)
        tot += e * sum(r_biv(el, alpha, el[k]) * M[k][c] % Q * lag(el, c, x)
                       for k in range(P.H) for c in range(P.H) if M[k][c])
    return tot % Q
