//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Golden-section minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Single mode on four time nodes (three free): brute-force trapezoid
/// integration of `exp(iS − W)` over the three link readouts.
pub struct TinyMode {
    pub l: f64,
    pub tau: f64,
    pub omega: f64,
    pub force: f64,
    pub delta: f64,
}

impl TinyMode {
    fn exponent(&self, e: [f64; 3], alpha: [f64; 3]) -> Complex64 {
        let four_volume = self.tau * self.l.powi(3);
        let v = self.l.powi(3);
        let eps = self.tau / 3.0;
        let mut q = [0.0; 4];
        for j in 0..3 {
            q[j + 1] = q[j] + eps * e[j];
        }
        let (mut s, mut w) = (0.0, 0.0);
        for j in 0..3 {
            let mid = 0.5 * (q[j] + q[j + 1]);
            s += v * eps * (0.5 * e[j] * e[j] - 0.5 * self.omega * self.omega * mid * mid + self.force * mid);
            w += v * eps / four_volume * (e[j] - alpha[j]).powi(2) / (self.delta * self.delta);
        }
        Complex64::new(-w, s)
    }

    pub fn amplitude(&self, alpha: [f64; 3], points: usize, half_width_sigmas: f64) -> Complex64 {
        let four_volume = self.tau * self.l.powi(3);
        let eps = self.tau / 3.0;
        let v = self.l.powi(3);
        let sigma = (four_volume * self.delta * self.delta / (2.0 * v * eps)).sqrt();
        let half = half_width_sigmas * sigma;
        let h = 2.0 * half / (points - 1) as f64;
        let node = |k: usize, a: f64| a - half + h * k as f64;
        let mut total = Complex64::default();
        for i in 0..points {
            for j in 0..points {
                for k in 0..points {
                    let e = [node(i, alpha[0]), node(j, alpha[1]), node(k, alpha[2])];
                    let edge = [i, j, k].iter().filter(|&&x| x == 0 || x == points - 1).count();
                    total += self.exponent(e, alpha).exp() * 0.5f64.powi(edge as i32);
                }
            }
        }
        // dq = ε³ dE
        total * h.powi(3) * eps.powi(3)
    }
}

/// Inverse of a small dense matrix by Gauss-Jordan with partial pivoting.
pub fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c];
        for j in 0..n {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                for j in 0..n {
                    a[r][j] -= f * a[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    inv
}

/// Precision matrix `−∇² ln|U|²` by central differences; exact for a quadratic.
pub fn precision_by_differences(log_abs_sq: impl Fn(&[f64]) -> f64, n: usize, h: f64) -> Vec<Vec<f64>> {
    let base = vec![0.0; n];
    let mut p = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let eval = |si: f64, sj: f64| {
                let mut x = base.clone();
                x[i] += si * h;
                x[j] += sj * h;
                log_abs_sq(&x)
            };
            let d2 = (eval(1.0, 1.0) - eval(1.0, -1.0) - eval(-1.0, 1.0) + eval(-1.0, -1.0)) / (4.0 * h * h);
            p[i][j] = -d2;
            p[j][i] = -d2;
        }
    }
    p
}

/// Integer vectors in `[-r, r]³` grouped by squared norm.
pub fn shell_counts(r: i32) -> HashMap<u32, u32> {
    let mut m = HashMap::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let s = (a * a + b * b + c * c) as u32;
                *m.entry(s).or_insert(0) += 1;
            }
        }
    }
    m
}
