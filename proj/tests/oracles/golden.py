"""High-precision reference values frozen into the C++ unit tests.

Everything here is computed with mpmath at 50 digits, independently of the
C++ code paths. Run with `python3 tests/oracles/golden.py`.
"""
import mpmath as mp

mp.mp.dps = 50
C_LIGHT = mp.mpf(299792458)


def show(name, value):
    print(f"{name:48s} {mp.nstr(value, 20)}")


# --- special functions -------------------------------------------------------
show("gamma(10.5)", mp.gamma(mp.mpf("10.5")))
show("upper_gamma(0.5, 2)", mp.gammainc(mp.mpf("0.5"), 2, mp.inf))
show("upper_gamma(0.5, 2) by quadrature",
     mp.quad(lambda t: t ** mp.mpf(-0.5) * mp.exp(-t), [2, 10, mp.inf]))
show("upper_gamma(3.7, 1.2)", mp.gammainc(mp.mpf("3.7"), mp.mpf("1.2"), mp.inf))
show("upper_gamma(2.5, 40)", mp.gammainc(mp.mpf("2.5"), 40, mp.inf))
show("exp(x)E1(x), x=1e-3", mp.exp(mp.mpf("1e-3")) * mp.e1(mp.mpf("1e-3")))
show("exp(x)E1(x), x=2.5", mp.exp(mp.mpf("2.5")) * mp.e1(mp.mpf("2.5")))
show("exp(x)E1(x), x=800", mp.exp(800) * mp.e1(800))
show("1F1(0.25, 0.5, 5.3)", mp.hyp1f1(mp.mpf("0.25"), mp.mpf("0.5"), mp.mpf("5.3")))
show("1F1(0.25, 0.5, -25)", mp.hyp1f1(mp.mpf("0.25"), mp.mpf("0.5"), -25))
show("1F1(10.5, 0.5, 7.5)", mp.hyp1f1(mp.mpf("10.5"), mp.mpf("0.5"), mp.mpf("7.5")))
show("1F1(-2.5, 1.5, 45)", mp.hyp1f1(mp.mpf("-2.5"), mp.mpf("1.5"), 45))
show("2F1(0.5, 2.5, 1.5, -7)", mp.hyp2f1(mp.mpf("0.5"), mp.mpf("2.5"), mp.mpf("1.5"), -7))
show("2F1(0.5, 2, 1.5, -499)", mp.hyp2f1(mp.mpf("0.5"), 2, mp.mpf("1.5"), -499))
show("2F1(0.5, 2, 1.5, -0.3)", mp.hyp2f1(mp.mpf("0.5"), 2, mp.mpf("1.5"), mp.mpf("-0.3")))


# W(a, b, c) is the truncated-Gaussian moment int_0^inf x^(2c+1) e^(-b x^2) erfc(a x / sqrt 2) dx
def w_integral(a, b, c):
    return mp.quad(lambda x: x ** (2 * c + 1) * mp.exp(-b * x * x) * mp.erfc(a * x / mp.sqrt(2)),
                   [0, 1, 4, mp.inf])


def w_closed(a, b, c):
    d = (2 * c + 3) / 2
    return (-a * mp.gamma(d) / (mp.sqrt(2 * mp.pi) * b ** d)
            * mp.hyp2f1(mp.mpf(1) / 2, d, mp.mpf(3) / 2, -a * a / (2 * b))
            + mp.gamma(c + 1) / (2 * b ** (c + 1)))


show("W(-1.2, 1, 0.5) by quadrature", w_integral(mp.mpf("-1.2"), 1, mp.mpf("0.5")))
show("W(-1.2, 1, 0.5) closed form", w_closed(mp.mpf("-1.2"), 1, mp.mpf("0.5")))


# Covariance of max(0, X), max(0, Y) for X, Y ~ N(0, omega/2) with correlation rho,
# by direct 2D quadrature over the positive quadrant.
def cov_oracle(rho, omega):
    rho = mp.mpf(rho)
    omega = mp.mpf(omega)
    s2 = omega / 2

    def inner(x):
        m = rho * x
        v = 1 - rho * rho
        # E[max(0, Y) | X = x] for Y | X ~ N(rho x, 1 - rho^2) (standardized)
        sd = mp.sqrt(v)
        return m * mp.ncdf(m / sd) + sd * mp.npdf(m / sd)

    exy = mp.quad(lambda x: x * inner(x) * mp.npdf(x), [0, 2, 6, mp.inf])
    return s2 * (exy - 1 / (2 * mp.pi))


for rho, om in [("0.5", 1), ("-0.5", 1), ("0.999", 1), ("0.5", 2), ("0.9836316430834658", 1)]:
    show(f"cov_pair({rho}, {om})", cov_oracle(rho, om))
show("cov_pair(-1, 1) limit", -1 / (4 * mp.pi))
show("cov_pair(1, 1) limit", (1 - 1 / mp.pi) / 4)


# --- geometry and channel statistics ----------------------------------------
def j0(x):
    return mp.mpf(1) if x == 0 else mp.sin(x) / x


def grid(width, height, f, s1, s2):
    w1 = mp.mpf(width) * f / C_LIGHT
    w2 = mp.mpf(height) * f / C_LIGHT
    return int(mp.floor(w1 / s1)) + 1, int(mp.floor(w2 / s2)) + 1, w1, w2


def rho_offset(d1, d2, n1, n2, w1, w2):
    return j0(2 * mp.pi * mp.sqrt((d1 * w1 / (n1 - 1)) ** 2 + (d2 * w2 / (n2 - 1)) ** 2))


def sigma_sums(n1, n2, w1, w2, omega=1):
    ports = [(k % n1, k // n1) for k in range(n1 * n2)]
    rs = mp.mpf(0)
    cs = mp.mpf(0)
    cache = {}
    for m in range(len(ports)):
        for k in range(m):
            d = (abs(ports[m][0] - ports[k][0]), abs(ports[m][1] - ports[k][1]))
            if d not in cache:
                r = rho_offset(d[0], d[1], n1, n2, w1, w2)
                cache[d] = (r, cov_oracle(r, omega))
            rs += cache[d][0]
            cs += cache[d][1]
    n = n1 * n2
    s2 = mp.mpf(omega) / 4 * (n + rs)
    s1 = n * mp.mpf(omega) / 4 * (1 - 1 / mp.pi) + 2 * cs
    return s1, s2


n1, n2, w1, w2 = grid("0.15", "0.08", mp.mpf(6e9), mp.mpf("0.5"), mp.mpf("0.5"))
print("6GHz-NC grid", n1, n2, mp.nstr(w1, 17), mp.nstr(w2, 17))
s1, s2 = sigma_sums(n1, n2, w1, w2)
show("6GHz-NC sigma1_sq", s1)
show("6GHz-NC sigma2_sq", s2)
show("j0(0.1 pi)", j0(mp.pi / 10))

nbar = n1 * n2
mu = mp.mpf(nbar) / 2 * mp.sqrt(1 / mp.pi)
show("6GHz-NC mu", mu)


def pdf_inphase(z, s1, s2, mu, interferers, delta):
    """Normalized in-phase SIR density: law of X^2 / (delta s2 V), X ~ N(mu, s1), V ~ chi2."""
    I = mp.mpf(interferers)
    c = delta * s2
    t = mu ** 2 * c * z / (2 * s1 * (s1 + c * z))
    a = -(2 * I + 1) / 4
    b = mp.mpf(-1) / 4
    M = mp.whitm(a, b, t)
    pre = (c ** mp.mpf(0.25) * mp.gamma((I + 1) / 2) * z ** mp.mpf(-0.75)
           / (mp.gamma(I / 2) * mp.gamma(mp.mpf(1) / 2) * 2 ** (I / 2) * mp.sqrt(mu)))
    return (pre * mp.exp(-mu ** 2 / (4 * s1) * (2 * s1 + c * z) / (s1 + c * z))
            * (2 / (1 + c * z / s1)) ** ((2 * I + 1) / 4) * M)


def pdf_mixture(z, s1, s2, mu, interferers, delta):
    """Same law through the chi-square mixture representation (independent route)."""
    I = mp.mpf(interferers)
    c = delta * s2

    def integrand(v):
        y = z * c * v
        fy = (mp.exp(-(y + mu * mu) / (2 * s1)) * mp.cosh(mu * mp.sqrt(y) / s1)
              / mp.sqrt(2 * mp.pi * s1 * y))
        fv = v ** (I / 2 - 1) * mp.exp(-v / 2) / (2 ** (I / 2) * mp.gamma(I / 2))
        return c * v * fy * fv

    return mp.quad(integrand, [0, I, 3 * I, mp.inf])


for U in (10, 20):
    I = U - 1
    c = s2
    t1 = mu ** 2 * c / (2 * s1 * (s1 + c))
    show(f"U={U} whittaker t at z=1", t1)
    show(f"U={U} whittaker M(t, z=1)", mp.whitm(-(2 * mp.mpf(I) + 1) / 4, mp.mpf(-1) / 4, t1))
    show(f"U={U} pdf_zI(z=sigma2_sq)", pdf_inphase(s2, s1, s2, mu, I, 1))
    show(f"U={U} pdf_zI(z=sigma2_sq) mixture", pdf_mixture(s2, s1, s2, mu, I, 1))
    show(f"U={U} pdf_zI(0.4)", pdf_inphase(mp.mpf("0.4"), s1, s2, mu, I, 1))
    zsmall = mp.mpf("1e-14")
    show(f"U={U} a0 extracted (z^(1/2) f at 1e-14)", pdf_inphase(zsmall, s1, s2, mu, I, 1) * mp.sqrt(zsmall))
    a0_closed = mp.exp(-mu ** 2 / (2 * s1)) * I * mp.sqrt(s2) / (2 * mp.sqrt(s1) * mp.gamma(mp.mpf(I) / 2))
    show(f"U={U} a0 closed form", a0_closed)
    show(f"U={U} beta_I", 1 / (mp.pi * a0_closed ** 2))
    show(f"U={U} normalization", mp.quad(lambda z: pdf_inphase(z, s1, s2, mu, I, 1), [0, mp.mpf("0.1"), 1, 10, mp.inf]))
