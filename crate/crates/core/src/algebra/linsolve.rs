//! Dense linear algebra over [`Coeff`]: row reduction, solution families.

use super::coeff::Coeff;

/// Row-reduced echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Coeff>>,
    /// `(row, column)` of every pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
}

fn is_negligible(c: &Coeff, scale: f64) -> bool {
    if c.is_exact() {
        c.is_zero()
    } else {
        c.abs() <= 1e-12 * scale.max(1e-300)
    }
}

/// Reduces `m` to RREF, choosing pivot columns in `col_order` (remaining columns follow in
/// natural order). Exact entries pivot on the first nonzero row; float entries on the largest.
pub fn rref(m: Vec<Vec<Coeff>>, col_order: &[usize]) -> Rref {
    let ncols = m.first().map_or(0, |r| r.len());
    reduce(m, &full_order(col_order, ncols))
}

fn full_order(col_order: &[usize], n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = col_order.iter().copied().filter(|&c| c < n).collect();
    for c in 0..n {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    order
}

/// Gauss-Jordan elimination pivoting only in the columns listed in `order`.
fn reduce(mut m: Vec<Vec<Coeff>>, order: &[usize]) -> Rref {
    let ncols = m.first().map_or(0, |r| r.len());
    let scale = m.iter().flat_map(|r| order.iter().map(move |&c| r[c].abs())).fold(0.0, f64::max);
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r >= m.len() {
            break;
        }
        let exact = m.iter().all(|row| row[c].is_exact());
        let pick = if exact {
            (r..m.len()).find(|&i| !m[i][c].is_zero())
        } else {
            (r..m.len())
                .filter(|&i| !is_negligible(&m[i][c], scale))
                .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
        };
        let Some(p) = pick else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for k in 0..ncols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in 0..ncols {
                if !m[r][k].is_zero() {
                    let t = &f * &m[r][k];
                    m[i][k] -= &t;
                }
            }
            m[i][c] = Coeff::zero();
        }
        pivots.push((r, c));
        r += 1;
    }
    Rref { rows: m, pivots }
}

/// Affine solution set `particular + span(nullspace)` of `A x = b`.
#[derive(Clone, Debug)]
pub struct Family {
    pub particular: Vec<Coeff>,
    pub nullspace: Vec<Vec<Coeff>>,
    pub pivot_cols: Vec<usize>,
}

/// Solves `A x = b`. Returns the index of an infeasible equation on failure
/// (an original row that reduces to `0 = nonzero`).
pub fn solve(a: &[Vec<Coeff>], b: &[Coeff], col_order: &[usize]) -> Result<Family, usize> {
    let n = a.first().map_or(0, |r| r.len());
    // augment with the right-hand side and an identity block recording row combinations
    let m = a.len();
    let aug: Vec<Vec<Coeff>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r.extend((0..m).map(|k| if k == i { Coeff::one() } else { Coeff::zero() }));
            r
        })
        .collect();
    // pivots are restricted to the unknown columns
    let red = reduce(aug, &full_order(col_order, n));
    let scale = a.iter().flatten().chain(b.iter()).map(|c| c.abs()).fold(0.0, f64::max);
    for (ri, row) in red.rows.iter().enumerate() {
        if red.pivots.iter().any(|&(r, _)| r == ri) {
            continue;
        }
        if !is_negligible(&row[n], scale) {
            // the recorded combination names the latest original row involved
            let culprit = (0..m).rev().find(|&k| !row[n + 1 + k].is_zero()).unwrap_or(ri);
            return Err(culprit);
        }
    }
    let pivot_cols: Vec<usize> = red.pivots.iter().map(|&(_, c)| c).collect();
    let mut particular = vec![Coeff::zero(); n];
    for &(r, c) in &red.pivots {
        particular[c] = red.rows[r][n].clone();
    }
    let mut nullspace = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![Coeff::zero(); n];
        v[f] = Coeff::one();
        for &(r, c) in &red.pivots {
            v[c] = -&red.rows[r][f];
        }
        nullspace.push(v);
    }
    Ok(Family { particular, nullspace, pivot_cols })
}

/// Rank of an exact or float matrix.
pub fn rank(m: &[Vec<Coeff>]) -> usize {
    rref(m.to_vec(), &[]).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> Coeff {
        Coeff::int(k)
    }

    #[test]
    fn solves_with_nullspace() {
        // x + y = 2, 2x + 2y = 4
        let a = vec![vec![c(1), c(1)], vec![c(2), c(2)]];
        let f = solve(&a, &[c(2), c(4)], &[]).unwrap();
        assert_eq!(f.particular, vec![c(2), c(0)]);
        assert_eq!(f.nullspace, vec![vec![c(-1), c(1)]]);
    }

    #[test]
    fn reports_infeasible_row() {
        let a = vec![vec![c(1), c(1)], vec![c(1), c(1)]];
        assert_eq!(solve(&a, &[c(1), c(2)], &[]).unwrap_err(), 1);
    }

    #[test]
    fn pivot_preference() {
        let a = vec![vec![c(1), c(2), c(3)]];
        let f = solve(&a, &[c(0)], &[2]).unwrap();
        assert_eq!(f.pivot_cols, vec![2]);
    }
}
