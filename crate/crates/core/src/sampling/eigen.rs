//! Dense eigensolvers: Hermitian (Householder + implicit QL) and general
//! complex (Hessenberg + shifted QR), used for the sampled ensembles.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Per-eigenvalue iteration cap.
pub const MAX_SWEEPS: usize = 50;

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("matrix is not square".into()));
        }
        Ok(Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn scale(&mut self, s: Complex64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.n;
        let mut m = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&a, &b| m[a * n + k].norm().total_cmp(&m[b * n + k].norm()))
                .unwrap();
            if m[piv * n + k].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    m.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let p = m[k * n + k];
            det *= p;
            for i in k + 1..n {
                let f = m[i * n + k] / p;
                for j in k..n {
                    let v = m[k * n + j];
                    m[i * n + j] -= f * v;
                }
            }
        }
        det
    }
}

/// Reduce a Hermitian matrix to real symmetric tridiagonal form (d, e),
/// e[i] coupling rows i and i+1.
fn hermitian_tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = h.n;
    let mut a = h.data.clone();
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vn: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for vi in v.iter_mut().take(n).skip(k + 1) {
            *vi /= vn;
        }
        // p = A v, K = v* A v, w = p − K v; A ← A − 2 v w* − 2 w v*
        for i in k + 1..n {
            let mut s = zero;
            for j in k + 1..n {
                s += a[i * n + j] * v[j];
            }
            p[i] = s;
        }
        let kk: f64 = (k + 1..n).map(|i| (v[i].conj() * p[i]).re).sum();
        for i in k + 1..n {
            p[i] -= v[i] * kk;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let upd = v[i] * p[j].conj() + p[i] * v[j].conj();
                a[i * n + j] -= upd * 2.0;
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();
        for i in k + 2..n {
            a[i * n + k] = zero;
            a[k * n + i] = zero;
        }
    }
    let d = (0..n).map(|i| a[i * n + i].re).collect();
    let e = (0..n.saturating_sub(1)).map(|i| a[(i + 1) * n + i].norm()).collect();
    (d, e)
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = h.n;
    let scale = h.frobenius().max(1.0);
    for i in 0..n {
        for j in i..n {
            if (h.get(i, j) - h.get(j, i).conj()).norm() > 1e-12 * scale {
                return Err(Error::Input(format!("matrix is not Hermitian at ({i},{j})")));
            }
        }
    }
    let (d, e) = hermitian_tridiagonalize(h);
    tridiagonal_eigenvalues(&d, &e)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `offdiag`, ascending. Implicit QL with Wilkinson-type shifts.
pub fn tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if offdiag.len() + 1 != n && !(n == 0 && offdiag.is_empty()) {
        return Err(Error::Input(format!(
            "off-diagonal has length {}, expected {}",
            offdiag.len(),
            n.saturating_sub(1)
        )));
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::Convergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Reduce to upper Hessenberg form by Householder reflections.
fn hessenberg(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.n;
    let mut a = m.data.clone();
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in 0..n {
            v[i] = if i > k { a[i * n + k] } else { zero };
        }
        v[k + 1] -= alpha;
        let vn: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi /= vn;
        }
        // A ← H A with H = I − 2 v v*
        for j in 0..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i].conj() * a[i * n + j]).sum();
            for i in k + 1..n {
                a[i * n + j] -= v[i] * s * 2.0;
            }
        }
        // A ← A H
        for i in 0..n {
            let s: Complex64 = (k + 1..n).map(|j| a[i * n + j] * v[j]).sum();
            for j in k + 1..n {
                a[i * n + j] -= s * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            a[i * n + k] = zero;
        }
    }
    a
}

/// Eigenvalues of a general complex matrix (unordered) by single-shift QR on
/// the Hessenberg form with Wilkinson shifts and deflation.
pub fn complex_eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.n;
    let mut a = hessenberg(m);
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; n];
    let mut hi = n;
    let mut iter = 0;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    while hi > 0 {
        if hi == 1 {
            out[0] = a[0];
            break;
        }
        // find the lowest active row
        let mut lo = hi - 1;
        while lo > 0 {
            let s = a[(lo - 1) * n + lo - 1].norm() + a[lo * n + lo].norm();
            if a[lo * n + lo - 1].norm() <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                a[lo * n + lo - 1] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            out[hi - 1] = a[(hi - 1) * n + hi - 1];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_SWEEPS {
            return Err(Error::Convergence { iterations: iter });
        }
        // Wilkinson shift from the trailing 2×2 block
        let (p, q) = (hi - 2, hi - 1);
        let mu = if iter % 11 == 10 {
            a[q * n + q] + a[q * n + p].norm()
        } else {
            let (aa, bb, cc, dd) = (a[p * n + p], a[p * n + q], a[q * n + p], a[q * n + q]);
            let tr = aa + dd;
            let det = aa * dd - bb * cc;
            let disc = (tr * tr * 0.25 - det).sqrt();
            let l1 = tr * 0.5 + disc;
            let l2 = tr * 0.5 - disc;
            if (l1 - dd).norm() < (l2 - dd).norm() { l1 } else { l2 }
        };
        for i in lo..hi {
            a[i * n + i] -= mu;
        }
        rot.clear();
        // QR by Givens on rows lo..hi
        for k in lo..hi - 1 {
            let x = a[k * n + k];
            let y = a[(k + 1) * n + k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (1.0, zero)
            } else if x.norm() == 0.0 {
                (0.0, (y / r).conj() * Complex64::new(1.0, 0.0))
            } else {
                let c = x.norm() / r;
                let s = (x / x.norm()) * y.conj() / r;
                (c, s)
            };
            // G = [[c, s], [−s̄, c]] applied to rows k, k+1
            for j in k..n {
                let u = a[k * n + j];
                let w = a[(k + 1) * n + j];
                a[k * n + j] = u * c + s * w;
                a[(k + 1) * n + j] = -s.conj() * u + w * c;
            }
            rot.push((c, s));
        }
        // RQ: apply G* on the right to columns k, k+1
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in 0..(k + 2).min(hi) {
                let u = a[i * n + k];
                let w = a[i * n + k + 1];
                a[i * n + k] = u * c + w * s.conj();
                a[i * n + k + 1] = -u * s + w * c;
            }
        }
        for i in lo..hi {
            a[i * n + i] += mu;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, c(rng.random_range(-1.0..1.0), 0.0));
            for j in i + 1..n {
                let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    #[test]
    fn two_by_two() {
        let m = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(2.0, 0.0)]]).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        let ev = tridiagonal_eigenvalues(&[2.0, 2.0], &[1.0]).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    /// Real roots of the monic cubic by the trigonometric method.
    fn cubic_roots(b: f64, cc: f64, d: f64) -> Vec<f64> {
        let p = cc - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
        let r = (-p / 3.0).sqrt();
        let phi = (3.0 * q / (2.0 * p * r)).clamp(-1.0, 1.0).acos() / 3.0;
        let mut out: Vec<f64> = (0..3)
            .map(|k| 2.0 * r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - b / 3.0)
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    #[test]
    fn three_by_three_against_characteristic_cubic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_hermitian(3, &mut rng);
            let g = |i, j| m.get(i, j);
            // det(λ − M) = λ³ − tr λ² + s2 λ − det
            let tr = m.trace().re;
            let s2 = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)
                + g(1, 1) * g(2, 2)
                - g(1, 2) * g(2, 1))
            .re;
            let det = m.determinant().re;
            let roots = cubic_roots(-tr, s2, -det);
            let ev = hermitian_eigenvalues(&m).unwrap();
            for (x, y) in ev.iter().zip(&roots) {
                assert!((x - y).abs() < 1e-8, "{ev:?} vs {roots:?}");
            }
        }
    }

    #[test]
    fn similarity_invariants_at_twenty() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_hermitian(20, &mut rng);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let tr: f64 = ev.iter().sum();
        let fro: f64 = ev.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((tr - m.trace().re).abs() <= 1e-9 * m.trace().re.abs().max(1.0));
        assert!((fro - m.frobenius()).abs() <= 1e-9 * m.frobenius());
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::Input(_))));
    }

    #[test]
    fn general_eigenvalues_match_trace_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 5, 12] {
            let mut m = ComplexMatrix::zeros(n);
            for z in &mut m.data {
                *z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
            let ev = complex_eigenvalues(&m).unwrap();
            let s: Complex64 = ev.iter().sum();
            let p: Complex64 = ev.iter().product();
            assert!((s - m.trace()).norm() < 1e-9, "n={n}");
            assert!((p - m.determinant()).norm() < 1e-8 * m.determinant().norm().max(1.0), "n={n}");
            // each eigenvalue makes M − λ singular
            for l in &ev {
                let mut sh = m.clone();
                for i in 0..n {
                    sh.data[i * n + i] -= *l;
                }
                assert!(sh.determinant().norm() < 1e-7 * m.frobenius().powi(n as i32).max(1.0));
            }
        }
    }
}
