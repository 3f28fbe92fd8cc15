"""Independent scalar traces used to freeze expected values in the C++ tests.

Run with: python3 tests/oracles/scalar_traces.py
"""
from mpmath import mp, mpf, cbrt, sqrt

mp.dps = 40

# hadamard_scale: 0.2 / 0.4^(1/3)
print("hadamard 0.2/cbrt(0.4) =", mpf("0.2") / cbrt(mpf("0.4")))

# madgrad step: x0=1, g=2, gamma=0.1, c=1, eps=0
lam = mpf("0.1") * sqrt(1)
s = lam * 2
nu = lam * 4
z = 1 - s / cbrt(nu)
print("madgrad x1 =", z, "s =", s, "nu =", nu)

# theoretical variant: x0=0, g=1, gamma=1, G=1, k=0
lam0 = mpf(1) * sqrt(1)
lam1 = mpf(1) * sqrt(2)
s = lam0 * 1
nu = lam0 * 1
z = 0 - s / cbrt(lam1 * 1 + nu)
print("theoretical z1 =", z)

# AdaGrad DA two steps: gamma=1, g0=g1=1
s = mpf(2); acc = mpf(2)
print("adagrad-da x2 =", -s / sqrt(acc))

# rejected variants at k=0: x0=0, g0=1, gamma=1
g = mpf(1); gamma = mpf(1)
w = sqrt(mpf(1))
print("unweighted x1 =", -(w * gamma * g) / sqrt(gamma * g * g))
print("weighted-denominator x1 =", -(w * gamma * g) / sqrt(w * gamma * g * g))
t = 1
print("weighted-numerator x1 =", -(gamma / sqrt(t)) * sqrt(w) / sqrt(w * g * g) * g)

# rejected variants, two steps, g0=1, g1=-0.5, gamma0=0.1, gamma1=0.2
gs = [mpf(1), mpf("-0.5")]
gm = [mpf("0.1"), mpf("0.2")]
num = sum(sqrt(i + 1) * gm[i] * gs[i] for i in range(2))
print("unweighted x2 =", -num / sqrt(sum(gm[i] * gs[i] ** 2 for i in range(2))))
print("weighted-denominator x2 =", -num / sqrt(sum(sqrt(i + 1) * gm[i] * gs[i] ** 2 for i in range(2))))
print("weighted-numerator x2 =", -(gm[1] / sqrt(2)) * sqrt(sum(sqrt(i + 1) for i in range(2)))
      / sqrt(sum(sqrt(i + 1) * gs[i] ** 2 for i in range(2))) * gs[1])

# madgrad three-step trace: x0=[0.5], grads 1, -2, 0.5; gamma 0.1; c=0.6 constant; eps=0
x0 = mpf("0.5"); x = x0; s = mpf(0); nu = mpf(0)
for k, g in enumerate([mpf(1), mpf(-2), mpf("0.5")]):
    lam = mpf("0.1") * sqrt(k + 1)
    s += lam * g
    nu += lam * g * g
    z = x0 - s / cbrt(nu)
    x = (1 - mpf("0.6")) * x + mpf("0.6") * z
    print("madgrad trace k=%d z=%s x=%s" % (k + 1, mp.nstr(z, 20), mp.nstr(x, 20)))

# StochasticQuadratic points {0,2}: F(0) - F(1)
F = lambda x: (mpf(1) / 2 * (x - 0) ** 2 + mpf(1) / 2 * (x - 2) ** 2) / 2
print("quadratic subopt at 0 =", F(0) - F(1))

# ck lemma, r=0.999 j=0: worst margin over k=1..1000
r = mpf("0.999"); j = 0
c = lambda k: (r + 1) / (k + j + r)
worst = min((1 / c(k - 1)) * mpf(k + j - 1) ** r - (1 - c(k)) / c(k) * mpf(k + j) ** r for k in range(1, 1001))
print("ck lemma r=0.999 min(rhs-lhs) =", worst)
