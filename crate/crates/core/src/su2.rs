//! SU(2): group law, Euler and `(t, nu, s)` charts, representation matrices
//! and the two Haar quadrature rules.
//!
//! An element is stored as the pair `(a, b)` of the matrix `[[a, b], [-conj b, conj a]]`,
//! i.e. `a = x1 + i x2`, `b = x3 + i x4`. The spin-`l` representation is the
//! symmetric power of the defining one, with basis index `k` carrying weight
//! `m = -l + k`. In Euler angles the matrix is `e^{-i m alpha} d_{mn}(beta) e^{-i n gamma}`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use faer::Mat;
use gauss_quad::GaussLegendre;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{GroupPoint, GroupTag, QuadLayout, QuadratureRule};
use crate::linalg::{CMat, C64, ZERO};

/// Tolerance on `|x|^2 = 1` accepted by the chart constructors.
const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2Element {
    a: C64,
    b: C64,
}

impl Su2Element {
    pub fn identity() -> Self {
        Su2Element {
            a: C64::new(1.0, 0.0),
            b: ZERO,
        }
    }

    /// From `[x1, x2, x3, x4]` on the unit 3-sphere.
    pub fn from_quaternion(x: [f64; 4]) -> Result<Self> {
        let n2: f64 = x.iter().map(|v| v * v).sum();
        if !n2.is_finite() || (n2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::ChartViolation(format!("|x|^2 = {n2} is not 1")));
        }
        Ok(Su2Element {
            a: C64::new(x[0], x[1]),
            b: C64::new(x[2], x[3]),
        })
    }

    /// From the first row `(a, b)`; requires `|a|^2 + |b|^2 = 1`.
    pub fn from_pair(a: C64, b: C64) -> Result<Self> {
        Self::from_quaternion([a.re, a.im, b.re, b.im])
    }

    /// Haar-random element (uniform on the 3-sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let n2: f64 = x.iter().map(|v| v * v).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                return Su2Element {
                    a: C64::new(x[0] / n, x[1] / n),
                    b: C64::new(x[2] / n, x[3] / n),
                };
            }
        }
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn quaternion(&self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [[self.a, self.b], [-self.b.conj(), self.a.conj()]]
    }

    pub fn inverse(&self) -> Self {
        Su2Element {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn neg(&self) -> Self {
        Su2Element {
            a: -self.a,
            b: -self.b,
        }
    }

    /// Largest deviation from `g g^* = I` and `det g = 1`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let v: C64 = (0..2).map(|k| m[i][k] * m[j][k].conj()).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - e).norm());
            }
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        worst.max((det - 1.0).norm())
    }

    pub fn distance(&self, other: &Su2Element) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }
}

pub fn su2_multiply(x: &Su2Element, y: &Su2Element) -> Su2Element {
    Su2Element {
        a: x.a * y.a - x.b * y.b.conj(),
        b: x.a * y.b + x.b * y.a.conj(),
    }
}

/// z-y-z Euler angles with `alpha, gamma in [0, 2pi)`, `beta in [0, pi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let angle_ok = |x: f64| (0.0..2.0 * PI).contains(&x);
        if !angle_ok(alpha) || !angle_ok(gamma) || !(0.0..=PI).contains(&beta) {
            return Err(Error::ChartViolation(format!(
                "Euler angles ({alpha}, {beta}, {gamma}) outside [0,2pi) x [0,pi] x [0,2pi)"
            )));
        }
        Ok(EulerAngles { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn to_element(&self) -> Su2Element {
        euler_element(self.alpha, self.beta, self.gamma)
    }
}

/// `diag(e^{i alpha/2}, e^{-i alpha/2}) . [[cos, -sin], [sin, cos]](beta/2) . diag(e^{i gamma/2}, e^{-i gamma/2})`
/// for unrestricted angles.
pub fn euler_element(alpha: f64, beta: f64, gamma: f64) -> Su2Element {
    let (s, c) = (beta / 2.0).sin_cos();
    Su2Element {
        a: C64::from_polar(c, (alpha + gamma) / 2.0),
        b: C64::from_polar(-s, (alpha - gamma) / 2.0),
    }
}

/// Euler angles of `g` together with the sign `+-1` for which `g = sign * U(angles)`.
///
/// At `beta = 0` or `beta = pi` only `alpha + gamma` (resp. `alpha - gamma`)
/// is determined and `gamma = 0` is chosen.
pub fn matrix_to_euler(g: &Su2Element) -> (EulerAngles, f64) {
    let (ma, mb) = (g.a.norm(), g.b.norm());
    let beta = (2.0 * mb.atan2(ma)).clamp(0.0, PI);
    let (alpha, gamma) = if mb <= 1e-15 {
        (2.0 * g.a.arg(), 0.0)
    } else if ma <= 1e-15 {
        (2.0 * (-g.b).arg(), 0.0)
    } else {
        let p = g.a.arg();
        let q = (-g.b).arg();
        (p + q, p - q)
    };
    let wrap = |x: f64| {
        let w = x.rem_euclid(2.0 * PI);
        if w >= 2.0 * PI {
            0.0
        } else {
            w
        }
    };
    let angles = EulerAngles {
        alpha: wrap(alpha),
        beta,
        gamma: wrap(gamma),
    };
    let u = angles.to_element();
    let overlap = if ma >= mb {
        (u.a.conj() * g.a).re
    } else {
        (u.b.conj() * g.b).re
    };
    (angles, if overlap >= 0.0 { 1.0 } else { -1.0 })
}

/// The chart `x1 = cos(t/2)`, `x2 = nu`, `(x3, x4) = r (cos s, sin s)` with
/// `r = sqrt(sin^2(t/2) - nu^2)`, on `0 <= t, s <= 2pi`, `|nu| <= sin(t/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TvsPoint {
    t: f64,
    nu: f64,
    s: f64,
}

impl TvsPoint {
    pub fn new(t: f64, nu: f64, s: f64) -> Result<Self> {
        let range = 0.0..=2.0 * PI;
        if !range.contains(&t) || !range.contains(&s) || nu.abs() > (t / 2.0).sin() + UNIT_TOL {
            return Err(Error::ChartViolation(format!(
                "(t, nu, s) = ({t}, {nu}, {s}) outside the chart domain"
            )));
        }
        Ok(TvsPoint { t, nu, s })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn to_element(&self) -> Su2Element {
        let (sh, ch) = (self.t / 2.0).sin_cos();
        let r = (sh * sh - self.nu * self.nu).max(0.0).sqrt();
        let (ss, cs) = self.s.sin_cos();
        Su2Element {
            a: C64::new(ch, self.nu),
            b: C64::new(r * cs, r * ss),
        }
    }
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

fn binomials(n: usize) -> Vec<Vec<f64>> {
    let mut c = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1.0;
        for k in 1..=i {
            c[i][k] = c[i - 1][k - 1] + if k < i { c[i - 1][k] } else { 0.0 };
        }
    }
    c
}

fn powers(z: C64, n: usize) -> Vec<C64> {
    let mut p = Vec::with_capacity(n + 1);
    let mut acc = C64::new(1.0, 0.0);
    for _ in 0..=n {
        p.push(acc);
        acc *= z;
    }
    p
}

/// Spin `two_l / 2` representation matrix of `g`, rows and columns in ascending `m`.
pub fn rep_matrix(two_l: u32, g: &Su2Element) -> CMat {
    let n = two_l as usize;
    let d = n + 1;
    let m = g.matrix();
    let (p11, p12, p21, p22) = (
        powers(m[0][0], n),
        powers(m[0][1], n),
        powers(m[1][0], n),
        powers(m[1][1], n),
    );
    let fact = factorials(n);
    let binom = binomials(n);
    Mat::from_fn(d, d, |row, col| {
        // column basis vector e1^p e2^q maps to (g11 e1 + g21 e2)^p (g12 e1 + g22 e2)^q;
        // the row picks the coefficient of e1^pp e2^qq.
        let (p, q) = (n - col, col);
        let (pp, qq) = (n - row, row);
        let lo = pp.saturating_sub(q);
        let hi = p.min(pp);
        let mut s = ZERO;
        for k in lo..=hi {
            s += p11[k] * p21[p - k] * p12[pp - k] * p22[q + k - pp] * (binom[p][k] * binom[q][pp - k]);
        }
        s * (fact[pp] * fact[qq] / (fact[p] * fact[q])).sqrt()
    })
}

/// Representation matrices for every spin up to `two_b / 2`.
pub fn rep_matrices_upto(two_b: u32, g: &Su2Element) -> Vec<CMat> {
    (0..=two_b).map(|tl| rep_matrix(tl, g)).collect()
}

/// Real small-d matrix `d^l(beta)` from the explicit finite sum, ascending `m`.
///
/// Entry `(r, c)` is the textbook `d^l_{m' m}(beta)` with `m' = -l + c`,
/// `m = -l + r`, which is the transpose ordering forced by `d^{1/2}(beta) =
/// [[cos, -sin], [sin, cos]](beta/2)`.
pub fn wigner_d_small(two_l: u32, beta: f64) -> Mat<f64> {
    let n = two_l as i64;
    let d = two_l as usize + 1;
    let fact = factorials(d);
    let f = |k: i64| fact[k as usize];
    let (sn, cs) = (beta / 2.0).sin_cos();
    Mat::from_fn(d, d, |r, c| {
        let (r, c) = (r as i64, c as i64);
        let pref = (f(c) * f(n - c) * f(r) * f(n - r)).sqrt();
        let lo = (r - c).max(0);
        let hi = r.min(n - c);
        let mut sum = 0.0;
        for s in lo..=hi {
            let sign = if (c - r + s).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let den = f(r - s) * f(s) * f(c - r + s) * f(n - c - s);
            sum += sign * cs.powi((n + r - c - 2 * s) as i32) * sn.powi((c - r + 2 * s) as i32) / den;
        }
        pref * sum
    })
}

/// `D_{mn} = e^{-i m alpha} d_{mn}(beta) e^{-i n gamma}`.
#[allow(non_snake_case)]
pub fn wigner_D(two_l: u32, e: &EulerAngles) -> CMat {
    wigner_D_unrestricted(two_l, e.alpha, e.beta, e.gamma)
}

#[allow(non_snake_case)]
pub(crate) fn wigner_D_unrestricted(two_l: u32, alpha: f64, beta: f64, gamma: f64) -> CMat {
    let small = wigner_d_small(two_l, beta);
    let tl = two_l as f64;
    let d = two_l as usize + 1;
    Mat::from_fn(d, d, |r, c| {
        let m = r as f64 - tl / 2.0;
        let n = c as f64 - tl / 2.0;
        C64::from_polar(small[(r, c)], -m * alpha - n * gamma)
    })
}

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("positive node count"));
    let mut pts: Vec<(f64, f64)> = rule.iter().map(|(x, w)| (*x, *w)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.into_iter().unzip()
}

/// Euler product rule exact for products of matrix coefficients up to spin
/// `two_b` summed with spin `two_b` twice over, i.e. exactness `4 two_b` in label units.
pub fn su2_quadrature_euler(two_b: u32) -> QuadratureRule {
    su2_quadrature_euler_with_exactness(4 * two_b)
}

/// Euler product rule with `D + 1` equispaced `alpha`, `gamma` nodes over
/// `[0, 4pi)` and `ceil(D/2) + 1` Gauss-Legendre nodes in `cos beta`.
pub fn su2_quadrature_euler_with_exactness(exactness: u32) -> QuadratureRule {
    let d = exactness as usize;
    let na = d + 1;
    let nb = d.div_ceil(2) + 1;
    let (x, w) = gauss_legendre(nb);
    // ascending beta = descending cos beta
    let betas: Vec<f64> = x.iter().rev().map(|v| v.clamp(-1.0, 1.0).acos()).collect();
    let beta_weights: Vec<f64> = w.iter().rev().map(|v| v / 2.0).collect();
    let angle = |k: usize| 4.0 * PI * k as f64 / na as f64;
    let mut nodes = Vec::with_capacity(na * nb * na);
    let mut weights = Vec::with_capacity(na * nb * na);
    for a in 0..na {
        for (k, beta) in betas.iter().enumerate() {
            for c in 0..na {
                nodes.push(GroupPoint::Su2(euler_element(angle(a), *beta, angle(c))));
                weights.push(beta_weights[k] / (na * na) as f64);
            }
        }
    }
    QuadratureRule {
        group: GroupTag::Su2,
        nodes,
        weights,
        exactness,
        layout: QuadLayout::EulerProduct {
            angle_count: na,
            betas,
            beta_weights,
        },
        raw_mass: None,
    }
}

/// Product rule in the `(t, nu, s)` chart for the measure `sin(t/2) dnu dt ds`,
/// exactness `4 two_b` in label units.
pub fn su2_quadrature_tvs(two_b: u32) -> QuadratureRule {
    su2_quadrature_tvs_with_exactness(4 * two_b)
}

/// In `x1 = cos(t/2)` the chart measure is `2 sqrt(1 - x1^2) dx1 du ds` with
/// `nu = sin(t/2) u`, so `t` uses Gauss-Chebyshev nodes of the second kind,
/// `u` Gauss-Legendre and `s` the trapezoid rule.
pub fn su2_quadrature_tvs_with_exactness(exactness: u32) -> QuadratureRule {
    let d = exactness as usize;
    let nt = (d + 1).div_ceil(2);
    let nu = (d + 1).div_ceil(2);
    let ns = d + 1;
    let (u, wu) = gauss_legendre(nu);
    let mut nodes = Vec::with_capacity(nt * nu * ns);
    let mut raw = Vec::with_capacity(nt * nu * ns);
    for k in 1..=nt {
        let psi = k as f64 * PI / (nt + 1) as f64;
        let t = 2.0 * psi;
        let wt = 2.0 * PI / (nt + 1) as f64 * psi.sin().powi(2);
        let sh = psi.sin();
        for (ui, wui) in u.iter().zip(&wu) {
            for c in 0..ns {
                let s = 2.0 * PI * c as f64 / ns as f64;
                let p = TvsPoint { t, nu: sh * ui, s };
                nodes.push(GroupPoint::Su2(p.to_element()));
                raw.push(wt * wui * 2.0 * PI / ns as f64);
            }
        }
    }
    let mass = crate::linalg::pairwise_sum_f64(&raw);
    let weights = raw.iter().map(|w| w / mass).collect();
    QuadratureRule {
        group: GroupTag::Su2,
        nodes,
        weights,
        exactness,
        layout: QuadLayout::Tvs {
            t_count: nt,
            nu_count: nu,
            s_count: ns,
        },
        raw_mass: Some(mass),
    }
}
