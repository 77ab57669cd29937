//! Floating-point helpers: common-zero search, quadrature nodes, numeric rank.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

/// Value and Wirtinger derivatives of one scalar function at a point.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub value: Complex64,
    pub dz: Complex64,
    pub dzb: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroHit {
    pub point: Complex64,
    /// Residual norm relative to the Jacobian scale.
    pub residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub center: Complex64,
    pub radius: f64,
    pub grid: usize,
    pub tol: f64,
    /// Discs `(center, radius)` left out of the search.
    pub exclude: Vec<(Complex64, f64)>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { center: Complex64::new(0.0, 0.0), radius: 10.0, grid: 200, tol: 1e-12, exclude: vec![] }
    }
}

const CONFIRM: f64 = 1e-8;
const SUSPECT: f64 = 1e-5;

fn merit(s: &[Sample]) -> f64 {
    s.iter().map(|v| v.value.norm_sqr()).sum::<f64>().sqrt()
}

fn jac_scale(s: &[Sample], z: Complex64) -> f64 {
    let j: f64 = s.iter().map(|v| v.dz.norm_sqr() + v.dzb.norm_sqr()).sum::<f64>().sqrt();
    1.0 + j * z.norm().max(1.0)
}

fn gauss_newton<F>(f: &F, mut z: Complex64, tol: f64) -> Option<ZeroHit>
where
    F: Fn(Complex64) -> Option<Vec<Sample>>,
{
    let mut converged = false;
    for _ in 0..60 {
        let s = f(z)?;
        let (mut aa, mut ab, mut bb, mut ar, mut br) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for v in &s {
            let a = v.dz + v.dzb;
            let b = Complex64::i() * (v.dz - v.dzb);
            aa += a.norm_sqr();
            bb += b.norm_sqr();
            ab += (a.conj() * b).re;
            ar += (a.conj() * v.value).re;
            br += (b.conj() * v.value).re;
        }
        let det = aa * bb - ab * ab;
        if det.abs() <= f64::EPSILON * (aa * bb).max(f64::MIN_POSITIVE) {
            break;
        }
        let dx = -(bb * ar - ab * br) / det;
        let dy = -(aa * br - ab * ar) / det;
        let step = Complex64::new(dx, dy);
        z += step;
        if !z.is_finite() {
            return None;
        }
        if step.norm() <= tol * z.norm().max(1.0) {
            converged = true;
            break;
        }
    }
    let s = f(z)?;
    let residual = merit(&s) / jac_scale(&s, z);
    Some(ZeroHit { point: z, residual, converged: converged && residual <= CONFIRM })
}

/// Common zeros of a finite family of smooth functions inside a disc: grid local minima of the
/// residual norm, polished by Gauss-Newton in real coordinates. Converged hits have relative
/// residual below `1e-8`; stalled hits with relative residual below `1e-5` are returned with
/// `converged = false`.
pub fn common_zeros<F>(f: F, opts: &SearchOptions) -> Vec<ZeroHit>
where
    F: Fn(Complex64) -> Option<Vec<Sample>> + Sync,
{
    let n = opts.grid.max(2);
    let h = 2.0 * opts.radius / (n - 1) as f64;
    let excluded = |z: Complex64| opts.exclude.iter().any(|(c, r)| (z - c).norm() < *r);
    let point = |i: usize, j: usize| {
        opts.center + Complex64::new(-opts.radius + i as f64 * h, -opts.radius + j as f64 * h)
    };
    let grid: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = point(i, j);
                    if (z - opts.center).norm() > opts.radius || excluded(z) {
                        return f64::NAN;
                    }
                    match f(z) {
                        Some(s) => {
                            let m = merit(&s) / jac_scale(&s, z);
                            if m.is_finite() {
                                m
                            } else {
                                f64::NAN
                            }
                        }
                        None => f64::NAN,
                    }
                })
                .collect()
        })
        .collect();
    let mut seeds = vec![];
    for i in 0..n {
        for j in 0..n {
            let m = grid[i][j];
            if m.is_nan() {
                continue;
            }
            let mut is_min = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                        continue;
                    }
                    let o = grid[a as usize][b as usize];
                    if !o.is_nan() && o < m {
                        is_min = false;
                    }
                }
            }
            if is_min {
                seeds.push(point(i, j));
            }
        }
    }
    let polished: Vec<ZeroHit> = seeds.par_iter().filter_map(|&z| gauss_newton(&f, z, opts.tol)).collect();
    let mut out: Vec<ZeroHit> = vec![];
    for hit in polished {
        if hit.residual > SUSPECT || (hit.point - opts.center).norm() > opts.radius * (1.0 + 1e-9) {
            continue;
        }
        if excluded(hit.point) {
            continue;
        }
        match out.iter_mut().find(|o| (o.point - hit.point).norm() <= 1e-7 * hit.point.norm().max(1.0)) {
            Some(o) => {
                if hit.residual < o.residual {
                    *o = hit;
                }
            }
            None => out.push(hit),
        }
    }
    out.sort_by(|a, b| a.point.re.total_cmp(&b.point.re).then(a.point.im.total_cmp(&b.point.im)));
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Smooth step: 1 for `t <= -1`, 0 for `t >= 1`, and `psi(t) + psi(-t) = 1`.
pub fn smooth_step(t: f64) -> f64 {
    if t <= -1.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let bump = |s: f64| if s <= 0.0 { 0.0 } else { (-1.0 / s).exp() };
    let a = bump(1.0 - t);
    let b = bump(1.0 + t);
    a / (a + b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankInfo {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    /// `sigma_rank / sigma_1`, or 0 for the zero matrix.
    pub gap: f64,
    /// Whether the rank is unchanged with the threshold moved one decade either way.
    pub stable: bool,
}

fn count_above(sv: &[f64], thr: f64) -> usize {
    sv.iter().filter(|&&s| s > thr).count()
}

/// Numeric rank with threshold `rel * sigma_1`.
pub fn numeric_rank(m: &DMatrix<Complex64>, rel: f64) -> RankInfo {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let s1 = sv.first().copied().unwrap_or(0.0);
    if s1 == 0.0 {
        return RankInfo { rank: 0, singular_values: sv, gap: 0.0, stable: true };
    }
    let rank = count_above(&sv, rel * s1);
    let stable = count_above(&sv, rel * 10.0 * s1) == rank && count_above(&sv, rel * 0.1 * s1) == rank;
    let gap = if rank == 0 { 0.0 } else { sv[rank - 1] / s1 };
    RankInfo { rank, singular_values: sv, gap, stable }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(7);
        let int: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((int - 2.0 / 13.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn partition_of_unity() {
        for t in [-1.5, -0.7, -0.1, 0.0, 0.3, 0.99] {
            assert!((smooth_step(t) + smooth_step(-t) - 1.0).abs() < 1e-15);
        }
        assert_eq!(smooth_step(-1.0), 1.0);
    }

    #[test]
    fn finds_common_zero() {
        // f = z - (1+i), g = (z - (1+i)) * zb
        let p = Complex64::new(1.0, 1.0);
        let f = |z: Complex64| {
            let zb = z.conj();
            Some(vec![
                Sample { value: z - p, dz: Complex64::new(1.0, 0.0), dzb: Complex64::new(0.0, 0.0) },
                Sample { value: (z - p) * zb, dz: zb, dzb: z - p },
            ])
        };
        let hits = common_zeros(f, &SearchOptions { radius: 3.0, grid: 40, ..Default::default() });
        assert_eq!(hits.len(), 1);
        assert!(hits[0].converged);
        assert!((hits[0].point - p).norm() < 1e-10);
    }

    #[test]
    fn rank_of_diagonal() {
        let m = DMatrix::from_fn(3, 3, |i, j| if i == j && i < 2 { Complex64::new(1.0 + i as f64, 0.0) } else { Complex64::new(0.0, 0.0) });
        let r = numeric_rank(&m, 1e-8);
        assert_eq!(r.rank, 2);
        assert!(r.stable);
        assert!((r.gap - 0.5).abs() < 1e-12);
    }
}
