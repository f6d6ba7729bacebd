"""Reference p-values for the Welch t and two-proportion chi-square tests.

Evaluated with mpmath at 50 significant digits, independently of the Rust
special-function code. Output is pasted into tests/stat_oracle.rs.
"""
from mpmath import mp, mpf, sqrt, betainc, gammainc, erfc, nstr

mp.dps = 50

WELCH = [
    (1.0, 4.0, 100, 0.5, 1.0, 50),
    (0.0, 1.0, 10, 0.0, 1.0, 10),
    (2.5, 1.3, 12, 1.9, 0.7, 9),
    (10.0, 25.0, 5, 4.0, 9.0, 7),
    (0.31, 0.02, 300, 0.35, 0.03, 5000),
    (5.0, 2.0, 3, 5.5, 3.0, 3),
    (1.2, 0.5, 40, 1.0, 0.5, 40),
    (100.0, 400.0, 1000, 101.5, 380.0, 200000),
    (3.3, 10.0, 2, 1.1, 0.1, 2),
    (0.0, 1.0, 1000, 0.2, 1.0, 1000),
    (7.0, 49.0, 30, 9.0, 64.0, 25),
    (0.5, 0.25, 295, 0.55, 0.3, 36000),
    (1.0, 1.0, 20, -1.0, 1.0, 20),
    (42.0, 1e-4, 50, 42.001, 2e-4, 80),
    (2.0, 3.0, 150000, 2.003, 3.1, 9000000),
    (0.8, 0.9, 6, 0.2, 0.1, 100),
    (12.0, 144.0, 11, 11.0, 100.0, 13),
    (0.0, 2.0, 500, 0.3, 2.0, 500),
    (4.4, 1.0, 1234, 4.5, 1.2, 4321),
    (0.9, 0.01, 8, 0.95, 0.02, 8),
]

CHI2 = [
    (30, 100, 20, 100),
    (50, 100, 50, 100),
    (0, 10, 5, 10),
    (10, 10, 5, 10),
    (212, 295, 24000, 33600),
    (150, 295, 25000, 33600),
    (1, 3, 2, 3),
    (33, 80, 40, 80),
    (400, 1000, 430000, 1000000),
    (460, 1000, 430000, 1000000),
    (7, 25, 9, 21),
    (2000, 5278, 3000000, 3600000),
    (120, 250, 118, 250),
    (5, 500, 12, 500),
    (99, 100, 90, 100),
    (3, 7, 1, 9),
    (1000, 4000, 1050, 4000),
    (25, 300, 40, 320),
    (600, 1200, 599, 1200),
    (17, 30, 9, 30),
]


def welch(m1, v1, n1, m2, v2, n2):
    m1, v1, m2, v2 = mpf(m1), mpf(v1), mpf(m2), mpf(v2)
    s1, s2 = v1 / n1, v2 / n2
    se2 = s1 + s2
    t = (m1 - m2) / sqrt(se2)
    df = se2 ** 2 / (s1 ** 2 / (n1 - 1) + s2 ** 2 / (n2 - 1))
    x = df / (df + t * t)
    tail = betainc(df / 2, mpf(1) / 2, 0, x, regularized=True) / 2
    two = 2 * tail
    greater = tail if t > 0 else 1 - tail
    less = 1 - greater
    return t, df, two, greater, less


def chi2(k1, n1, k2, n2):
    p1, p2 = mpf(k1) / n1, mpf(k2) / n2
    p = mpf(k1 + k2) / (n1 + n2)
    z = (p1 - p2) / sqrt(p * (1 - p) * (mpf(1) / n1 + mpf(1) / n2))
    stat = z * z
    two = gammainc(mpf(1) / 2, stat / 2, mp.inf, regularized=True)
    greater = erfc(z / sqrt(2)) / 2
    less = erfc(-z / sqrt(2)) / 2
    return stat, z, two, greater, less


def f(x):
    return nstr(x, 17, min_fixed=-30, max_fixed=30)


print("const WELCH_CASES: &[WelchCase] = &[")
for c in WELCH:
    t, df, two, g, l = welch(*c)
    m1, v1, n1, m2, v2, n2 = c
    print(f"    WelchCase {{ m1: {m1!r}, v1: {v1!r}, n1: {n1}, m2: {m2!r}, v2: {v2!r}, n2: {n2}, "
          f"t: {f(t)}, df: {f(df)}, two_sided: {f(two)}, greater: {f(g)}, less: {f(l)} }},")
print("];")
print()
print("const CHI2_CASES: &[Chi2Case] = &[")
for c in CHI2:
    stat, z, two, g, l = chi2(*c)
    k1, n1, k2, n2 = c
    print(f"    Chi2Case {{ k1: {k1}, n1: {n1}, k2: {k2}, n2: {n2}, "
          f"statistic: {f(stat)}, two_sided: {f(two)}, greater: {f(g)}, less: {f(l)} }},")
print("];")

NORMAL = [-8.0, -5.0, -2.5, -1.0, -0.3, 0.0, 0.7, 1.0, 1.96, 3.0, 6.0]
STUDENT = [(0.5, 1.0), (-2.0, 1.0), (1.5, 2.5), (-0.7, 4.0), (3.0, 7.0), (-4.0, 30.0),
           (2.0, 148.0), (0.01, 1e3), (-3.0, 1e5), (2.5, 1e7), (-1.5, 3e8), (12.0, 5.0)]
CHISQ = [(0.01, 1.0), (1.0, 1.0), (3.84, 1.0), (10.0, 1.0), (40.0, 1.0), (0.5, 2.0),
         (4.0, 3.0), (15.0, 10.0), (120.0, 100.0), (2.2, 0.5)]

print()
print("const NORMAL_CDF: &[(f64, f64)] = &[")
for x in NORMAL:
    print(f"    ({x!r}, {f(erfc(-mpf(x) / sqrt(2)) / 2)}),")
print("];")
print("const STUDENT_T_CDF: &[(f64, f64, f64)] = &[")
for t, df in STUDENT:
    t_, df_ = mpf(t), mpf(df)
    tail = betainc(df_ / 2, mpf(1) / 2, 0, df_ / (df_ + t_ * t_), regularized=True) / 2
    cdf = 1 - tail if t > 0 else tail
    print(f"    ({t!r}, {df!r}, {f(cdf)}),")
print("];")
print("const CHI2_CDF: &[(f64, f64, f64)] = &[")
for x, k in CHISQ:
    print(f"    ({x!r}, {k!r}, {f(gammainc(mpf(k) / 2, 0, mpf(x) / 2, regularized=True))}),")
print("];")
