"""High-precision reference values, written independently of the package code.

Everything here uses mpmath at 50 digits and only the printed amplitude and
harmonic tables; it shares no code with genylm.
"""
import mpmath as mp

mp.mp.dps = 50


def z_amplitudes(m, tp, pp):
    tp, pp = mp.mpf(tp), mp.mpf(pp)
    c2, s2 = mp.cos(tp / 2) ** 2, mp.sin(tp / 2) ** 2
    r = 1 / mp.sqrt(2)
    em, ep = mp.expj(-pp), mp.expj(pp)
    rows = {
        1: (c2 * em, r * mp.sin(tp), s2 * ep),
        0: (-r * mp.sin(tp) * em, mp.cos(tp), r * mp.sin(tp) * ep),
        -1: (-s2 * em, r * mp.sin(tp), -c2 * ep),
    }
    return rows[m]


def ordinary(t, p):
    t, p = mp.mpf(t), mp.mpf(p)
    a = mp.sqrt(mp.mpf(3) / (8 * mp.pi))
    b = mp.sqrt(mp.mpf(3) / (4 * mp.pi))
    return (-a * mp.sin(t) * mp.expj(p), b * mp.cos(t), a * mp.sin(t) * mp.expj(-p))


def generalized(m, tp, pp, t, p):
    return mp.fsum(c * y for c, y in zip(z_amplitudes(m, tp, pp), ordinary(t, p)))


if __name__ == "__main__":
    v = generalized(1, mp.pi / 4, mp.pi / 3, 1.0, 2.0)
    print(mp.nstr(v.real, 25), mp.nstr(v.imag, 25))
    for m in (1, 0, -1):
        v = generalized(m, 0.7, 2.1, 1.3, 0.4)
        print(m, mp.nstr(v.real, 25), mp.nstr(v.imag, 25))
    print(mp.nstr(3 / (4 * mp.pi), 25), mp.nstr(3 / (8 * mp.pi), 25), mp.nstr(4 * mp.pi, 25))


def general_amplitudes(tp, pp, t, p):
    """3x3 table (rows m_i, columns m_f, order +1, 0, -1) for axis (tp, pp) -> axis (t, p)."""
    tp, pp, t, p = (mp.mpf(x) for x in (tp, pp, t, p))
    c2p, s2p = mp.cos(tp / 2) ** 2, mp.sin(tp / 2) ** 2
    c2, s2 = mp.cos(t / 2) ** 2, mp.sin(t / 2) ** 2
    stp, ctp, st, ct = mp.sin(tp), mp.cos(tp), mp.sin(t), mp.cos(t)
    em, ep = mp.expj(-(pp - p)), mp.expj(pp - p)
    r = 1 / mp.sqrt(2)
    half = mp.mpf(1) / 2
    return mp.matrix(
        [
            [c2p * c2 * em + s2p * s2 * ep + half * stp * st,
             r * (s2p * st * ep - c2p * st * em + stp * ct),
             c2p * s2 * em + s2p * c2 * ep - half * stp * st],
            [r * (-stp * c2 * em + stp * s2 * ep + ctp * st),
             half * stp * st * em + half * stp * st * ep + ctp * ct,
             r * (-stp * s2 * em + stp * c2 * ep - ctp * st)],
            [s2p * c2 * em + c2p * s2 * ep - half * stp * st,
             r * (-s2p * st * em + c2p * st * ep - stp * ct),
             s2p * s2 * em + c2p * c2 * ep + half * stp * st],
        ]
    )


def chain_deviation(a, b, c):
    lhs = general_amplitudes(*a, *b) * general_amplitudes(*b, *c)
    rhs = general_amplitudes(*a, *c)
    return max(abs(lhs[i, j] - rhs[i, j]) for i in range(3) for j in range(3))
