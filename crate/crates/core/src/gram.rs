//! Construction of superconformal minimal surfaces from a pole ansatz: linear conditions on
//! the Gram matrix of the unknown coefficient vectors, their exact solution, and realization
//! of the Gram matrix by vectors.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::linsolve::{self, Family};
use crate::algebra::{Coeff, Poly, Rat, Var};
use crate::error::{Error, Result};
use crate::numeric::numeric_rank;
use crate::surface::MinimalSurface;

/// Shape of `x_z`.
#[derive(Clone, Debug, PartialEq)]
pub enum Ansatz {
    /// `sum_p sum_{o = 2..=order} u_{p,o} / (z - p)^o + sum_{d <= poly_degree} w_d z^d`.
    /// Vectors are ordered pole by pole, orders descending, then polynomial terms by
    /// descending degree.
    Poles { poles: Vec<(Coeff, u32)>, poly_degree: Option<u32> },
    /// `sum_{j <= degree} v_j z^j / denominator`. Residue conditions are solved for the
    /// vectors listed in `eliminate` first.
    Numerator { denominator: Poly, degree: usize, eliminate: Vec<usize> },
}

impl Ansatz {
    /// Scalar function multiplying each vector.
    pub fn basis(&self) -> Vec<Rat> {
        match self {
            Ansatz::Poles { poles, poly_degree } => {
                let mut out = vec![];
                for (p, order) in poles {
                    for o in (2..=*order).rev() {
                        let den = Poly::linear_root(p, Var::Z).pow(o);
                        out.push(Rat::new(Poly::one(Var::Z), den).expect("nonzero"));
                    }
                }
                if let Some(d) = poly_degree {
                    for k in (0..=*d).rev() {
                        out.push(Rat::from_poly(Poly::monomial(Coeff::one(), k as usize, Var::Z)));
                    }
                }
                out
            }
            Ansatz::Numerator { denominator, degree, .. } => (0..=*degree)
                .map(|j| Rat::new(Poly::monomial(Coeff::one(), j, Var::Z), denominator.clone()).expect("nonzero"))
                .collect(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        match self {
            Ansatz::Poles { poles, poly_degree } => {
                let mut out = vec![];
                for (i, (_, order)) in poles.iter().enumerate() {
                    for o in (2..=*order).rev() {
                        out.push(format!("p{i}_{o}"));
                    }
                }
                if let Some(d) = poly_degree {
                    for k in (0..=*d).rev() {
                        out.push(format!("w{}", k + 2));
                    }
                }
                out
            }
            Ansatz::Numerator { degree, .. } => (0..=*degree).map(|j| format!("v{j}")).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `x_z . x_z == 0`
    Conformal,
    /// `x_zz . x_zz == 0`
    Isotropic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    /// Coefficient of `z^d` in the cleared numerator.
    Product { condition: Condition, degree: usize },
    /// `v_j . v_k = value`
    Pin { j: usize, k: usize },
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub source: Source,
    pub row: Vec<Coeff>,
    pub rhs: Coeff,
}

#[derive(Clone, Debug)]
pub struct GramSystem {
    pub ansatz: Ansatz,
    /// Vectors left free after residue elimination, as indices into the ansatz vectors.
    pub free: Vec<usize>,
    /// `v_j = sum_a subst[j][a] e_a` over the free vectors `e_a`.
    pub subst: Vec<Vec<Coeff>>,
    /// Unknown `lambda_ab = e_a . e_b`, `a <= b`, as positions in `free`.
    pub unknowns: Vec<(usize, usize)>,
    pub equations: Vec<Equation>,
}

/// Common denominator `l` and numerators `n_i = r_i l`.
fn over_common_denominator(rats: &[Rat]) -> Result<(Vec<Poly>, Poly)> {
    let mut l = Poly::one(Var::Z);
    for r in rats {
        if r.is_zero() {
            continue;
        }
        let g = l.gcd(r.den())?;
        l = l.mul(&r.den().exact_div(&g).expect("gcd divides"));
    }
    let nums = rats
        .iter()
        .map(|r| if r.is_zero() { Poly::zero(Var::Z) } else { r.num().mul(&l.exact_div(r.den()).expect("lcm")) })
        .collect();
    Ok((nums, l))
}

/// Linear residue conditions `sum_j R[k][j] v_j = 0` for `x_z = sum_j v_j phi_j`.
fn residue_conditions(basis: &[Rat]) -> Result<Vec<Vec<Coeff>>> {
    let logs: Vec<Rat> = basis
        .iter()
        .map(|phi| match phi.integrate() {
            Ok(_) => Ok(Rat::zero(Var::Z)),
            Err(o) => Rat::new(o.log_num, o.log_den).map_err(Error::from),
        })
        .collect::<Result<_>>()?;
    let (nums, _) = over_common_denominator(&logs)?;
    let rows = nums.iter().map(|p| p.degree().map_or(0, |d| d + 1)).max().unwrap_or(0);
    Ok((0..rows).map(|k| nums.iter().map(|p| p.coeff(k)).collect()).collect())
}

fn pair_index(unknowns: &[(usize, usize)], a: usize, b: usize) -> usize {
    let key = (a.min(b), a.max(b));
    unknowns.iter().position(|u| *u == key).expect("pair present")
}

/// Row expressing `v_j . v_k` in the unknowns.
fn lambda_row(sys: &GramSystem, j: usize, k: usize) -> Vec<Coeff> {
    let mut row = vec![Coeff::zero(); sys.unknowns.len()];
    let nf = sys.free.len();
    for a in 0..nf {
        for b in 0..nf {
            let c = &sys.subst[j][a] * &sys.subst[k][b];
            if !c.is_zero() {
                row[pair_index(&sys.unknowns, a, b)] += &c;
            }
        }
    }
    row
}

fn product_equations(psi: &[Rat], unknowns: &[(usize, usize)], condition: Condition) -> Result<Vec<Equation>> {
    let (nums, _) = over_common_denominator(psi)?;
    let polys: Vec<Poly> = unknowns
        .iter()
        .map(|&(a, b)| {
            let p = nums[a].mul(&nums[b]);
            if a == b {
                p
            } else {
                p.scale(&Coeff::int(2))
            }
        })
        .collect();
    let top = polys.iter().filter_map(Poly::degree).max().map_or(0, |d| d + 1);
    Ok((0..top)
        .map(|d| Equation {
            source: Source::Product { condition, degree: d },
            row: polys.iter().map(|p| p.coeff(d)).collect(),
            rhs: Coeff::zero(),
        })
        .filter(|e| !e.row.iter().all(Coeff::is_zero))
        .collect())
}

pub fn build_system(ansatz: &Ansatz) -> Result<GramSystem> {
    build_system_with(ansatz, &[Condition::Conformal, Condition::Isotropic])
}

pub fn build_system_with(ansatz: &Ansatz, conditions: &[Condition]) -> Result<GramSystem> {
    let basis = ansatz.basis();
    let n = basis.len();
    let res = residue_conditions(&basis)?;
    let order = match ansatz {
        Ansatz::Numerator { eliminate, .. } => eliminate.clone(),
        Ansatz::Poles { .. } => vec![],
    };
    let (free, subst) = if res.is_empty() || res.iter().all(|r| r.iter().all(Coeff::is_zero)) {
        let id: Vec<Vec<Coeff>> = (0..n).map(|j| (0..n).map(|a| if a == j { Coeff::one() } else { Coeff::zero() }).collect()).collect();
        ((0..n).collect::<Vec<_>>(), id)
    } else {
        let fam = linsolve::solve(&res, &vec![Coeff::zero(); res.len()], &order).expect("homogeneous");
        let free: Vec<usize> = (0..n).filter(|j| !fam.pivot_cols.contains(j)).collect();
        // nullspace vectors are indexed by their free column, in increasing order
        let subst = (0..n).map(|j| fam.nullspace.iter().map(|v| v[j].clone()).collect()).collect();
        (free, subst)
    };
    let nf = free.len();
    let psi: Vec<Rat> = (0..nf)
        .map(|a| basis.iter().enumerate().fold(Rat::zero(Var::Z), |acc, (j, phi)| acc.add(&phi.scale(&subst[j][a]))))
        .collect();
    let unknowns: Vec<(usize, usize)> = (0..nf).flat_map(|a| (a..nf).map(move |b| (a, b))).collect();
    let mut equations = vec![];
    for c in conditions {
        let fns: Vec<Rat> = match c {
            Condition::Conformal => psi.clone(),
            Condition::Isotropic => psi.iter().map(Rat::derivative).collect(),
        };
        equations.extend(product_equations(&fns, &unknowns, *c)?);
    }
    Ok(GramSystem { ansatz: ansatz.clone(), free, subst, unknowns, equations })
}

impl GramSystem {
    pub fn describe(&self, idx: usize) -> String {
        match self.equations.get(idx).map(|e| &e.source) {
            Some(Source::Product { condition, degree }) => {
                let what = match condition {
                    Condition::Conformal => "x_z.x_z",
                    Condition::Isotropic => "x_zz.x_zz",
                };
                format!("coefficient of z^{degree} in the numerator of {what}")
            }
            Some(Source::Pin { j, k }) => {
                let l = self.ansatz.labels();
                format!("pin {}.{}", l[*j], l[*k])
            }
            None => format!("equation {idx}"),
        }
    }

    /// `v_j . v_k` as a linear form in the unknowns.
    pub fn lambda_row(&self, j: usize, k: usize) -> Vec<Coeff> {
        lambda_row(self, j, k)
    }

    pub fn with_pins(&self, pins: &[Pin]) -> GramSystem {
        let mut sys = self.clone();
        for p in pins {
            sys.equations.push(Equation {
                source: Source::Pin { j: p.j, k: p.k },
                row: lambda_row(self, p.j, p.k),
                rhs: p.value.clone(),
            });
        }
        sys
    }

    /// Residual `row . lambda - rhs` of every equation.
    pub fn residuals(&self, lambda: &[Coeff]) -> Vec<Coeff> {
        self.equations
            .iter()
            .map(|e| e.row.iter().zip(lambda).fold(-e.rhs.clone(), |acc, (a, b)| acc + &(a * b)))
            .collect()
    }

    /// Free vectors expanded to all ansatz vectors.
    pub fn expand(&self, free_vectors: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
        let dim = free_vectors.first().map_or(0, Vec::len);
        self.subst
            .iter()
            .map(|s| {
                (0..dim)
                    .map(|c| s.iter().zip(free_vectors).fold(Coeff::zero(), |acc, (k, v)| acc + &(k * &v[c])))
                    .collect()
            })
            .collect()
    }
}

/// `v_j . v_k = value`, indices into the ansatz vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Pin {
    pub j: usize,
    pub k: usize,
    pub value: Coeff,
}

#[derive(Clone, Debug)]
pub struct GramSolution {
    pub family: Family,
    /// Dimension of the solution family.
    pub dimension: usize,
}

impl GramSolution {
    pub fn particular(&self) -> &[Coeff] {
        &self.family.particular
    }

    /// Gram matrix of the free vectors for unknowns `lambda`.
    pub fn free_matrix(sys: &GramSystem, lambda: &[Coeff]) -> Vec<Vec<Coeff>> {
        let nf = sys.free.len();
        (0..nf).map(|a| (0..nf).map(|b| lambda[pair_index(&sys.unknowns, a, b)].clone()).collect()).collect()
    }

    /// Gram matrix of all ansatz vectors for unknowns `lambda`.
    pub fn full_matrix(sys: &GramSystem, lambda: &[Coeff]) -> Vec<Vec<Coeff>> {
        let n = sys.subst.len();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| lambda_row(sys, j, k).iter().zip(lambda).fold(Coeff::zero(), |acc, (a, b)| acc + &(a * b)))
                    .collect()
            })
            .collect()
    }
}

pub fn solve_system(sys: &GramSystem, pins: &[Pin]) -> Result<GramSolution> {
    let full = sys.with_pins(pins);
    let a: Vec<Vec<Coeff>> = full.equations.iter().map(|e| e.row.clone()).collect();
    let b: Vec<Coeff> = full.equations.iter().map(|e| e.rhs.clone()).collect();
    match linsolve::solve(&a, &b, &[]) {
        Ok(family) => {
            let dimension = family.nullspace.len();
            Ok(GramSolution { family, dimension })
        }
        Err(idx) => Err(Error::Inconsistent(idx)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug)]
pub struct Realization {
    /// Row `i` is the vector realizing index `i` of the matrix.
    pub vectors: Vec<Vec<Complex64>>,
    pub rank: usize,
    /// Takagi values, descending.
    pub singular_values: Vec<f64>,
    /// Signature of the real matrix, when the input is real.
    pub signature: Option<Signature>,
    /// Dimension of the real span of the real and imaginary parts.
    pub real_span_dim: usize,
    /// `max |B B^T - A|`
    pub residual: f64,
}

pub fn to_cmatrix(a: &[Vec<Coeff>]) -> DMatrix<Complex64> {
    let m = a.len();
    DMatrix::from_fn(m, m, |i, j| a[i][j].to_c64())
}

fn real_signature(a: &DMatrix<Complex64>, tol: f64) -> Option<Signature> {
    if a.iter().any(|c| c.im.abs() > tol) {
        return None;
    }
    let re = a.map(|c| c.re);
    let eig = SymmetricEigen::new(re).eigenvalues;
    let scale = eig.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
    let positive = eig.iter().filter(|&&v| v > tol * scale).count();
    let negative = eig.iter().filter(|&&v| v < -tol * scale).count();
    Some(Signature { positive, negative, zero: eig.len() - positive - negative })
}

/// Realizes a complex symmetric matrix as `B B^T` with `B` of width `n`
/// (Takagi factorization, via the real symmetric matrix `[[X, Y], [Y, -X]]` of `A = X + iY`).
pub fn realize(a: &DMatrix<Complex64>, n: usize) -> Result<Realization> {
    let m = a.nrows();
    let tol = 1e-10;
    let mut big = DMatrix::<f64>::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let (x, y) = (a[(i, j)].re, a[(i, j)].im);
            big[(i, j)] = x;
            big[(i, j + m)] = y;
            big[(i + m, j)] = y;
            big[(i + m, j + m)] = -x;
        }
    }
    let eig = SymmetricEigen::new(big);
    let mut order: Vec<usize> = (0..2 * m).collect();
    order.sort_by(|&p, &q| eig.eigenvalues[q].total_cmp(&eig.eigenvalues[p]));
    let top = eig.eigenvalues[order[0]].max(0.0);
    let keep: Vec<usize> = order.into_iter().filter(|&k| eig.eigenvalues[k] > tol * top.max(1e-300)).collect();
    let rank = keep.len();
    if rank > n {
        return Err(Error::RankExceedsDimension { rank, n });
    }
    let mut vectors = vec![vec![Complex64::new(0.0, 0.0); n]; m];
    for (col, &k) in keep.iter().enumerate() {
        let s = eig.eigenvalues[k].sqrt();
        for i in 0..m {
            // u = a + i b, eigenvector [a; b]
            let u = Complex64::new(eig.eigenvectors[(i, k)], eig.eigenvectors[(i + m, k)]);
            vectors[i][col] = u * s;
        }
    }
    let singular_values = keep.iter().map(|&k| eig.eigenvalues[k]).collect();
    let b = DMatrix::from_fn(m, n, |i, j| vectors[i][j]);
    let residual = (&b * b.transpose() - a).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let parts = DMatrix::from_fn(2 * m, n, |i, j| {
        let c = vectors[i % m][j];
        Complex64::new(if i < m { c.re } else { c.im }, 0.0)
    });
    let real_span_dim = numeric_rank(&parts, 1e-9).rank;
    Ok(Realization { vectors, rank, singular_values, signature: real_signature(a, tol), real_span_dim, residual })
}

/// Squarefree part `g` and cofactor `s` with `n = s^2 g`, by trial division.
fn squarefree_split(n: &BigInt) -> Option<(BigInt, u32)> {
    let mut n = n.abs();
    let mut s = BigInt::one();
    let mut g: u64 = 1;
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        if p > 1_000_000 {
            return None;
        }
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &bp;
        }
        if e % 2 == 1 {
            g *= p;
        }
        p += 1;
    }
    let rest = n.to_u64()?;
    if rest > 1 {
        g = g.checked_mul(rest)?;
    }
    Some((s, u32::try_from(g).ok()?))
}

/// `sqrt(d)` for rational `d`, in the form `c sqrt(g)`.
fn rational_sqrt(d: &BigRational) -> Option<(Coeff, u32)> {
    let pq = d.numer() * d.denom();
    let (s, g) = squarefree_split(&pq)?;
    let mag = BigRational::new(s, d.denom().clone());
    let c = if d.is_negative() { Coeff::gauss(BigRational::zero(), mag) } else { Coeff::rational(mag) };
    Some((c, g))
}

/// Exact realization over `Q(i)` with at most one extra square root.
///
/// Hyperbolic pairs `e.e = f.f = 0`, `e.f = c` are realized without radicals as
/// `(1, i)` and `(c/2, -ic/2)`; the rest is diagonalized. `None` when more than one
/// radicand would be needed.
pub fn realize_exact(a: &[Vec<Coeff>], n: usize) -> Result<Option<Vec<Vec<Coeff>>>> {
    let m = a.len();
    let q = |x: &[Coeff], y: &[Coeff]| -> Coeff {
        let mut acc = Coeff::zero();
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if !y[j].is_zero() && !a[i][j].is_zero() {
                    acc += &(&(&x[i] * &a[i][j]) * &y[j]);
                }
            }
        }
        acc
    };
    let unit = |i: usize| -> Vec<Coeff> { (0..m).map(|k| if k == i { Coeff::one() } else { Coeff::zero() }).collect() };
    let axpy = |x: &[Coeff], t: &Coeff, y: &[Coeff]| -> Vec<Coeff> { x.iter().zip(y).map(|(a, b)| a + &(t * b)).collect() };
    let mut work: Vec<Vec<Coeff>> = (0..m).map(unit).collect();
    // blocks: (basis vectors, rows of the block realization)
    let mut blocks: Vec<(Vec<Vec<Coeff>>, Vec<Vec<Coeff>>)> = vec![];
    let mut radical: Vec<Vec<Coeff>> = vec![];
    let mut diagonal: Vec<(Vec<Coeff>, Coeff)> = vec![];
    let mut radicand: Option<u32> = None;
    while !work.is_empty() {
        let diag: Vec<Coeff> = work.iter().map(|w| q(w, w)).collect();
        // radical vectors drop out
        if let Some(i) = (0..work.len()).find(|&i| diag[i].is_zero() && work.iter().all(|w| q(&work[i], w).is_zero())) {
            radical.push(work.remove(i));
            continue;
        }
        if let Some(i) = (0..work.len()).find(|&i| diag[i].is_zero()) {
            let j = (0..work.len()).find(|&j| j != i && !q(&work[i], &work[j]).is_zero()).expect("not radical");
            let e = work[i].clone();
            let c = q(&e, &work[j]);
            let t = -(&q(&work[j], &work[j]) * &(&c * &Coeff::int(2)).inv()?);
            let f = axpy(&work[j], &t, &e);
            let ci = c.inv()?;
            let rest: Vec<Vec<Coeff>> = work
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, w)| {
                    let w1 = axpy(w, &-(&q(w, &f) * &ci), &e);
                    axpy(&w1, &-(&q(w, &e) * &ci), &f)
                })
                .collect();
            let half = &c * &Coeff::ratio(1, 2);
            blocks.push((vec![e, f], vec![vec![Coeff::one(), Coeff::i()], vec![half.clone(), -(&half * &Coeff::i())]]));
            work = rest;
            continue;
        }
        let g = work[0].clone();
        let d = q(&g, &g);
        let di = d.inv()?;
        work = work[1..].iter().map(|w| axpy(w, &-(&q(w, &g) * &di), &g)).collect();
        diagonal.push((g, d));
    }
    // diagonal values in pairs: p = (a, b) with a^2 + b^2 = d1 over Q(i), q = t(-b, a)
    // with t^2 = d2/d1; a leftover value gets its own square root
    let mut rest = diagonal.into_iter();
    while let Some((g1, d1)) = rest.next() {
        match rest.next() {
            Some((g2, d2)) => {
                let a = &(&d1 + &Coeff::one()) * &Coeff::ratio(1, 2);
                let b = &(&(&d1 - &Coeff::one()) * &Coeff::ratio(-1, 2)) * &Coeff::i();
                let Some(ratio) = (&d2 * &d1.inv()?).as_rational() else { return Ok(None) };
                let Some((c, rad)) = rational_sqrt(&ratio) else { return Ok(None) };
                if rad != 1 && radicand.is_some_and(|r| r != rad) {
                    return Ok(None);
                }
                let t = if rad == 1 { c } else { &c * &Coeff::sqrt(rad) };
                if rad != 1 {
                    radicand = Some(rad);
                }
                let row2 = vec![-(&t * &b), &t * &a];
                blocks.push((vec![g1, g2], vec![vec![a, b], row2]));
            }
            None => {
                let Some(dr) = d1.as_rational() else { return Ok(None) };
                let Some((c, rad)) = rational_sqrt(&dr) else { return Ok(None) };
                if rad != 1 && radicand.is_some_and(|r| r != rad) {
                    return Ok(None);
                }
                let root = if rad == 1 { c } else { &c * &Coeff::sqrt(rad) };
                blocks.push((vec![g1], vec![vec![root]]));
            }
        }
    }
    // P has the block basis vectors as columns, then the radical; B = P^{-T} H
    let mut basis: Vec<Vec<Coeff>> = blocks.iter().flat_map(|(b, _)| b.iter().cloned()).collect();
    let nblock = basis.len();
    basis.extend(radical);
    let width: usize = blocks.iter().map(|(_, h)| h[0].len()).sum();
    if width > n {
        return Err(Error::RankExceedsDimension { rank: width, n });
    }
    let mut h = vec![vec![Coeff::zero(); n]; basis.len()];
    debug_assert!(nblock <= basis.len());
    let (mut row, mut col) = (0, 0);
    for (_, hb) in &blocks {
        for (r, hr) in hb.iter().enumerate() {
            for (c, v) in hr.iter().enumerate() {
                h[row + r][col + c] = v.clone();
            }
        }
        row += hb.len();
        col += hb[0].len();
    }
    let r = basis.len();
    let pt: Vec<Vec<Coeff>> = basis.clone();
    let mut out = vec![vec![Coeff::zero(); n]; m];
    for c in 0..n {
        let rhs: Vec<Coeff> = (0..r).map(|k| h[k][c].clone()).collect();
        if rhs.iter().all(Coeff::is_zero) {
            continue;
        }
        let fam = linsolve::solve(&pt, &rhs, &[]).map_err(|_| Error::Invalid("singular basis".into()))?;
        for i in 0..m {
            out[i][c] = fam.particular[i].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            let g = out[i].iter().zip(&out[j]).fold(Coeff::zero(), |acc, (x, y)| acc + &(x * y));
            if g != a[i][j] {
                return Ok(None);
            }
        }
    }
    Ok(Some(out))
}

/// Integrates `x_z = sum_j vectors[j] phi_j` componentwise.
pub fn assemble_surface(vectors: &[Vec<Coeff>], ansatz: &Ansatz) -> Result<MinimalSurface> {
    let basis = ansatz.basis();
    if vectors.len() != basis.len() {
        return Err(Error::Invalid(format!("expected {} vectors, got {}", basis.len(), vectors.len())));
    }
    let dim = vectors.first().map_or(0, Vec::len);
    let mut f = vec![];
    for c in 0..dim {
        let fp = basis.iter().zip(vectors).fold(Rat::zero(Var::Z), |acc, (phi, v)| acc.add(&phi.scale(&v[c])));
        let fc = fp.integrate().map_err(|o| Error::ResidueObstruction(format!("component {c}: {}/{}", o.log_num, o.log_den)))?;
        f.push(fc);
    }
    MinimalSurface::new(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pole_system() {
        let ans = Ansatz::Poles { poles: vec![(Coeff::zero(), 2)], poly_degree: None };
        let sys = build_system_with(&ans, &[Condition::Conformal]).unwrap();
        assert_eq!(sys.unknowns, vec![(0, 0)]);
        assert_eq!(sys.equations.len(), 1);
        assert_eq!(sys.equations[0].row, vec![Coeff::one()]);
    }

    #[test]
    fn realize_rank_one() {
        let a = DMatrix::from_fn(2, 2, |i, j| Complex64::new(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0));
        let r = realize(&a, 2).unwrap();
        assert_eq!(r.rank, 1);
        assert!((r.vectors[0][0].norm() - 1.0).abs() < 1e-12);
        assert!(r.vectors[1].iter().all(|c| c.norm() < 1e-12));
        assert!(matches!(realize(&DMatrix::identity(3, 3), 2), Err(Error::RankExceedsDimension { rank: 3, n: 2 })));
    }

    #[test]
    fn exact_hyperbolic_plane() {
        let a = vec![vec![Coeff::zero(), Coeff::int(3)], vec![Coeff::int(3), Coeff::int(5)]];
        let b = realize_exact(&a, 2).unwrap().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let g = b[i].iter().zip(&b[j]).fold(Coeff::zero(), |acc, (x, y)| acc + &(x * y));
                assert_eq!(g, a[i][j]);
            }
        }
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(&BigInt::from(72)), Some((BigInt::from(6), 2)));
        let (c, g) = rational_sqrt(&BigRational::new(BigInt::from(-27), BigInt::from(2))).unwrap();
        assert_eq!(g, 6);
        assert_eq!(c, Coeff::gauss(BigRational::zero(), BigRational::new(BigInt::from(3), BigInt::from(2))));
    }
}
