#!/usr/bin/env python3
# Copyright 2026 The rieszlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values frozen into the C++ tests.

Nothing here shares code with the library. Each value is computed by a
route that does not use homogeneous polar coordinates or the library's
quadrature: closed forms, scipy adaptive quadrature, or brute-force
sampling with numpy.
"""
import numpy as np
from scipy import integrate, special


def koranyi_ball_volume(c=16.0):
    # |z|^4 + c t^2 < 1 with z in R^2: slice in t, integrate disk of radius
    # (1 - c t^2)^(1/4).
    tmax = 1.0 / np.sqrt(c)
    val, _ = integrate.quad(lambda t: np.pi * np.sqrt(1.0 - c * t * t), -tmax, tmax)
    return val


def sum_norm_heisenberg_ball_volume(rho=4):
    # |a|^4 + |b|^4 + t^2 < 1 (weights 1,1,2; rho = 4).
    f = lambda b, a: 2.0 * np.sqrt(max(0.0, 1.0 - a**4 - b**4))
    g = lambda a: (1.0 - a**4) ** 0.25
    val, _ = integrate.dblquad(f, -1, 1, lambda a: -g(a), g)
    return val


def sum_norm_abelian_13_ball_volume():
    # weights (1,3), rho = 6: |x1|^6 + |x2|^2 < 1.
    val, _ = integrate.quad(lambda x: 2.0 * np.sqrt(1.0 - x**6), -1, 1)
    return val


def koranyi_vs_max_constants(samples=2_000_000, seed=1):
    # inf/sup of max(|a|,|b|,|t|^(1/2)) on the Koranyi sphere (|z|^4+16t^2=1),
    # by brute force over a fine parametrization of the sphere.
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0, 2 * np.pi, samples)
    psi = rng.uniform(-np.pi / 2, np.pi / 2, samples)
    # |z|^2 = cos(psi), 4t = sin(psi)
    rz = np.sqrt(np.abs(np.cos(psi)))
    a, b, t = rz * np.cos(phi), rz * np.sin(phi), np.sin(psi) / 4
    m = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.sqrt(np.abs(t)))
    return m.min(), m.max()


def conformal_quotient():
    # ||I_1 u||_4 / ||u||_{4/3} in R^2 for u = (1+|x|^2)^(-3/2), using the
    # elliptic-integral angular reduction of the kernel 1/|x-y|.
    u = lambda r: (1 + r * r) ** -1.5

    def riesz(rho):
        def inner(r):
            m = 4 * rho * r / (rho + r) ** 2
            return u(r) * r * 4.0 / (rho + r) * special.ellipk(m)
        pts = [rho] if rho > 0 else None
        v1, _ = integrate.quad(inner, 0, 2 * rho + 1, points=pts, limit=400)
        v2, _ = integrate.quad(inner, 2 * rho + 1, np.inf, limit=400)
        return v1 + v2

    num, _ = integrate.quad(lambda r: riesz(r) ** 4 * r * 2 * np.pi, 0, np.inf, limit=200)
    den, _ = integrate.quad(lambda r: u(r) ** (4 / 3) * r * 2 * np.pi, 0, np.inf)
    return num ** 0.25 / den ** 0.75, riesz(0.0), riesz(1.0)


def gaussian_riesz_origin():
    # I_1 e^{-|y|^2} at 0 in R^2 = 2 pi int_0^inf e^{-r^2} dr
    return np.pi ** 1.5


def gaussian_quotient_r2():
    # ||I_1 u||_4 / ||u||_{4/3} for u = e^{-|x|^2} in R^2.
    u = lambda r: np.exp(-r * r)

    def riesz(rho):
        def inner(r):
            m = 4 * rho * r / (rho + r) ** 2
            return u(r) * r * 4.0 / (rho + r) * special.ellipk(m)
        pts = [rho] if rho > 0 else None
        v1, _ = integrate.quad(inner, 0, max(8.0, 2 * rho), points=pts, limit=400)
        return v1

    num, _ = integrate.quad(lambda r: riesz(r) ** 4 * r * 2 * np.pi, 0, np.inf, limit=200)
    den, _ = integrate.quad(lambda r: u(r) ** (4 / 3) * r * 2 * np.pi, 0, np.inf)
    return num ** 0.25 / den ** 0.75


def disk_potential(x):
    # int_{|y|<1} |y - (x, 0)|^-1 dy for x > 1, adaptive 2-D quadrature in
    # polar coordinates about 0.
    f = lambda r, t: r / np.sqrt(x * x - 2 * x * r * np.cos(t) + r * r)
    val, _ = integrate.dblquad(f, 0, 2 * np.pi, 0, 1, epsabs=1e-12, epsrel=1e-12)
    return val


def gaussian_pairing():
    # int int e^-|x|^2 e^-|y|^2 |x - y|^-1 on R^2 x R^2. With u = (x - y)/sqrt2,
    # v = (x + y)/sqrt2 it is pi * 2 pi / sqrt2 * int_0^inf e^-r^2 dr.
    radial, _ = integrate.quad(lambda r: np.exp(-r * r), 0, np.inf)
    return np.pi * 2 * np.pi / np.sqrt(2) * radial, np.pi**2 * np.sqrt(np.pi / 2)


def dyadic_small_shell_limit():
    # c0 = int_{1/2 <= |z| <= 2} |z - e|^-1.5 dz in polar coordinates about e;
    # the radial integral of rho^-0.5 is exact.
    def per_angle(phi):
        c = np.cos(phi)
        hi = -c + np.sqrt(c * c + 3.0)
        val = 2.0 * np.sqrt(hi)
        if c < 0 and c * c >= 0.75:
            d = np.sqrt(c * c - 0.75)
            val -= 2.0 * (np.sqrt(-c + d) - np.sqrt(-c - d))
        return val

    c0, _ = integrate.quad(per_angle, 0, 2 * np.pi, limit=200, points=[5 * np.pi / 6, 7 * np.pi / 6])
    return c0, 2 * c0 * c0 * (2**2.5 - 1) / (2.5 * 15.75)


if __name__ == "__main__":
    print("koranyi |S| (c=16)        ", 4 * koranyi_ball_volume(), " closed form pi^2/2 =", np.pi**2 / 2)
    print("heis sum-norm |S| (rho=4) ", 4 * sum_norm_heisenberg_ball_volume())
    print("heis max-norm |S|         ", 4 * 8.0)
    print("abelian(1,3) sum |S|      ", 4 * sum_norm_abelian_13_ball_volume())
    print("abelian(1,3) max |S|      ", 4 * 4.0)
    print("koranyi vs max (lo, hi)   ", koranyi_vs_max_constants())
    print("gaussian riesz at 0       ", gaussian_riesz_origin())
    q, r0, r1 = conformal_quotient()
    print("conformal quotient        ", q, " (2 sqrt(pi) =", 2 * np.sqrt(np.pi), ")  I u(0) =", r0, " I u(1) =", r1)
    print("gaussian quotient R2      ", gaussian_quotient_r2())
    print("disk potential x=2, x=10  ", disk_potential(2.0), disk_potential(10.0))
    print("gaussian pairing          ", gaussian_pairing())
    print("dyadic c0, small-k ratio  ", dyadic_small_shell_limit())
