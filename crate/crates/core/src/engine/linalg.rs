//! Small structured solvers for the lattice Gaussian integrals.
//!
//! Two shapes occur: the per-mode exponent matrix is complex symmetric and
//! tridiagonal with a positive-definite real part, and the joint system behind
//! `|U|²` is complex banded with no definiteness at all. The first is factored
//! as `L D Lᵀ` without pivoting (its Schur complements keep a positive-definite
//! real part, so every pivot stays in the right half-plane); the second uses
//! banded LU with partial pivoting.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest tolerated ratio between the largest and smallest factorization pivot.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Copy + Default> SymTridiag<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            diag: vec![T::default(); n],
            off: vec![T::default(); n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }
}

impl SymTridiag<f64> {
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Smallest `L D Lᵀ` pivot relative to the largest diagonal entry; non-positive
    /// means the matrix is not positive definite.
    pub fn min_relative_pivot(&self) -> f64 {
        let scale = self.diag.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return 0.0;
        }
        let mut prev = self.diag[0];
        let mut min = prev;
        for i in 1..self.len() {
            let l = self.off[i - 1] / prev;
            prev = self.diag[i] - l * self.off[i - 1];
            min = min.min(prev);
        }
        min / scale
    }

    /// Solves `A x = b` for a real symmetric tridiagonal `A` (no pivoting).
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let c = SymTridiag {
            diag: self.diag.iter().map(|&d| Complex64::new(d, 0.0)).collect(),
            off: self.off.iter().map(|&d| Complex64::new(d, 0.0)).collect(),
        };
        let f = TridiagLdl::factor(&c, "stiffness matrix")?;
        let rhs: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(f.solve(&rhs).into_iter().map(|z| z.re).collect())
    }
}

/// `L D Lᵀ` factorization of a complex symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagLdl {
    pivots: Vec<Complex64>,
    mult: Vec<Complex64>,
}

impl TridiagLdl {
    pub fn factor(a: &SymTridiag<Complex64>, what: &'static str) -> Result<Self> {
        let n = a.len();
        let mut pivots = Vec::with_capacity(n);
        let mut mult = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n {
            let d = if i == 0 {
                a.diag[0]
            } else {
                let l = a.off[i - 1] / pivots[i - 1];
                mult.push(l);
                a.diag[i] - l * a.off[i - 1]
            };
            pivots.push(d);
        }
        check_pivots(pivots.iter().map(|p| p.norm()), what)?;
        Ok(Self { pivots, mult })
    }

    pub fn pivots(&self) -> &[Complex64] {
        &self.pivots
    }

    /// `Σ ln dᵢ` with principal logarithms; for a matrix with positive-definite
    /// real part this is the branch continuous from the real case.
    pub fn log_det(&self) -> Complex64 {
        self.pivots.iter().map(|p| p.ln()).sum()
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.pivots.len();
        let mut x = b.to_vec();
        for i in 1..n {
            let prev = x[i - 1];
            x[i] -= self.mult[i - 1] * prev;
        }
        for (xi, p) in x.iter_mut().zip(&self.pivots) {
            *xi /= p;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            let next = x[i + 1];
            x[i] -= self.mult[i] * next;
        }
        x
    }
}

fn check_pivots(mags: impl Iterator<Item = f64>, what: &'static str) -> Result<()> {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for m in mags {
        lo = lo.min(m);
        hi = hi.max(m);
    }
    let ratio = hi / lo;
    if !ratio.is_finite() || ratio > CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            what,
            ratio,
            limit: CONDITION_LIMIT,
        });
    }
    Ok(())
}

/// Square complex band matrix with `kl` sub- and `ku` super-diagonals, factored
/// in place by LU with partial pivoting. Rows carry `kl` extra slots for fill-in.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    kl: usize,
    width: usize,
    data: Vec<Complex64>,
    perm: Vec<usize>,
    factored: bool,
}

impl BandLu {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            width,
            data: vec![Complex64::default(); n * width],
            perm: Vec::new(),
            factored: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j + self.kl - i < self.width);
        i * self.width + (j + self.kl - i)
    }

    fn col_end(&self, i: usize) -> usize {
        (i + self.width - self.kl).min(self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if j + self.kl < i || j + self.kl - i >= self.width {
            return Complex64::default();
        }
        self.data[self.idx(i, j)]
    }

    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// Factors in place; fails when the pivot ratio exceeds [`CONDITION_LIMIT`].
    pub fn factor(&mut self, what: &'static str) -> Result<()> {
        let n = self.n;
        let mut perm = Vec::with_capacity(n);
        for k in 0..n {
            let last = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.get(k, k).norm();
            for i in k + 1..=last {
                let v = self.get(i, k).norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            perm.push(p);
            if best == 0.0 {
                continue;
            }
            if p != k {
                for j in k..self.col_end(k) {
                    let (a, b) = (self.idx(k, j), self.idx(p, j));
                    self.data.swap(a, b);
                }
            }
            let pivot = self.get(k, k);
            let end = self.col_end(k);
            for i in k + 1..=last {
                let ik = self.idx(i, k);
                let f = self.data[ik] / pivot;
                self.data[ik] = f;
                if f == Complex64::default() {
                    continue;
                }
                for j in k + 1..end {
                    let kj = self.data[self.idx(k, j)];
                    let ij = self.idx(i, j);
                    self.data[ij] -= f * kj;
                }
            }
        }
        self.perm = perm;
        self.factored = true;
        check_pivots((0..n).map(|k| self.get(k, k).norm()), what)
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        assert!(self.factored, "BandLu::solve before factor");
        let n = self.n;
        let mut x = b.to_vec();
        for k in 0..n {
            let p = self.perm[k];
            if p != k {
                x.swap(k, p);
            }
            let xk = x[k];
            for i in k + 1..=(k + self.kl).min(n - 1) {
                x[i] -= self.get(i, k) * xk;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for j in k + 1..self.col_end(k) {
                s -= self.get(k, j) * x[j];
            }
            x[k] = s / self.get(k, k);
        }
        x
    }
}
