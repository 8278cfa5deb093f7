"""Comparison, max and rounding division gadgets."""


def greater_than(b, x, y, width):
    """[x > y] for x, y in [0, 2^width): top bit of 2^width + x - y - 1."""
    d = x - y + ((1 << width) - 1)
    bits = b.bits(d, width + 1, pack="C")
    return bits[width]


def select_max(b, best, bid, width, out=None):
    """new = best + [bid > best] (bid - best); ties keep the incumbent.

    If ``out`` (a statement index) is given, the result is written there.
    """
    gt = greater_than(b, bid, best, width)
    diff = bid - best
    val = b.rt.add(best.val, b.rt.mul(gt.val, diff.val))
    new = b.set_stmt(out, val) if out is not None else b.witness(val)
    b.enforce(gt, diff, new - best)
    return new


def range_check(b, x, width):
    b.bits(x, width)


def div_round(b, num, den, shift, num_bits, den_bits, q_bits):
    """round(num * 2^shift / den) for den > 0, as one constrained division.

    N = 2 num 2^shift + den and Dv = 2 den give floor(N / Dv) = round-half-up;
    q Dv = N - r with 0 <= r < Dv.
    """
    N = num * (2 << shift) + den
    Dv = den * 2
    n_bits = num_bits + shift + 2
    W = max(n_bits, den_bits + 1 + q_bits)
    qv = b.rt.divround(N.val, Dv.val, W, q_bits)
    q = b.witness(qv)
    r = N - b.mul(q, Dv)
    range_check(b, r, den_bits + 1)
    range_check(b, Dv - 1 - r, den_bits + 1)
    return q
