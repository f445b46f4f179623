use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AbelianGroup, IntMatrix, IntVector, LatticeError};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₁ | d₂ | … ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithDecomposition {
    /// Diagonal entries `d₁, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn axpy_row(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    // rows[target] -= q * rows[src]
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn axpy_col(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for row in rows.iter_mut() {
        if !row[src].is_zero() {
            let delta = q * &row[src];
            row[target] -= delta;
        }
    }
}

impl Work {
    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        self.u.swap(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(j, k);
        }
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the smallest nonzero absolute value in the remaining block,
/// ties broken by (row, column).
pub fn smith_normal_form(matrix: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (matrix.rows(), matrix.cols());
    let mut w = Work {
        a: (0..m).map(|i| (0..n).map(|j| matrix.get(i, j).clone()).collect()).collect(),
        u: identity_rows(m),
        v: identity_rows(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = w.smallest_pivot(t) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&pivot);
                axpy_row(&mut w.a, i, t, &q);
                axpy_row(&mut w.u, i, t, &q);
                clean &= w.a[i][t].is_zero();
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&pivot);
                axpy_col(&mut w.a, j, t, &q);
                axpy_col(&mut w.v, j, t, &q);
                clean &= w.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| w.a[i].iter().skip(t + 1).any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    axpy_row(&mut w.a, t, i, &minus_one);
                    axpy_row(&mut w.u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_zero() {
            break;
        }
        if w.a[t][t].is_negative() {
            for x in w.a[t].iter_mut().chain(w.u[t].iter_mut()) {
                *x = -&*x;
            }
        }
        rank += 1;
    }

    let to_matrix = |rows: Vec<Vec<BigInt>>, r: usize, c: usize| {
        let mut out = IntMatrix::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    };
    SmithDecomposition {
        u: to_matrix(w.u, m, m).with_labels(matrix.row_labels().to_vec(), matrix.row_labels().to_vec()),
        d: to_matrix(w.a, m, n).with_labels(matrix.row_labels().to_vec(), matrix.col_labels().to_vec()),
        v: to_matrix(w.v, n, n).with_labels(matrix.col_labels().to_vec(), matrix.col_labels().to_vec()),
        rank,
    }
}

/// Echelon (Hermite) form of a list of row vectors: positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows dropped.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<(usize, Vec<BigInt>)> {
    let mut out_rows = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        if out_rows == rows.len() {
            break;
        }
        loop {
            let best = (out_rows..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else {
                break;
            };
            rows.swap(out_rows, best);
            let pivot = rows[out_rows][col].clone();
            let mut done = true;
            for r in out_rows + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&pivot);
                axpy_row(&mut rows, r, out_rows, &q);
                done &= rows[r][col].is_zero();
            }
            if done {
                break;
            }
        }
        if rows.get(out_rows).is_none_or(|row| row[col].is_zero()) {
            continue;
        }
        if rows[out_rows][col].is_negative() {
            for x in rows[out_rows].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = rows[out_rows][col].clone();
        for r in 0..out_rows {
            let q = rows[r][col].div_floor(&pivot);
            if !q.is_zero() {
                axpy_row(&mut rows, r, out_rows, &q);
            }
        }
        pivots.push(col);
        out_rows += 1;
    }
    rows.truncate(out_rows);
    pivots.into_iter().zip(rows).collect()
}

fn kernel_hermite(snf: &SmithDecomposition) -> Vec<(usize, Vec<BigInt>)> {
    let n = snf.v.cols();
    let columns: Vec<Vec<BigInt>> = (snf.rank..n).map(|j| snf.v.column(j).into_inner()).collect();
    hermite_rows(columns, n)
}

/// Integer kernel basis in Hermite form (canonical for the kernel lattice).
pub fn kernel_basis(matrix: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(matrix);
    kernel_hermite(&snf).into_iter().map(|(_, row)| row.into()).collect()
}

fn solve(matrix: &IntMatrix, rhs: &IntVector) -> Result<Option<IntVector>, LatticeError> {
    if rhs.len() != matrix.rows() {
        return Err(LatticeError::DimensionMismatch { expected: matrix.rows(), found: rhs.len() });
    }
    let snf = smith_normal_form(matrix);
    let c = snf.u.mul_vec(rhs)?;
    let mut y = IntVector::zeros(matrix.cols());
    for i in 0..matrix.rows() {
        if i < snf.rank {
            let (q, r) = c[i].div_rem(snf.d.get(i, i));
            if !r.is_zero() {
                return Ok(None);
            }
            *y.get_mut(i) = q;
        } else if !c[i].is_zero() {
            return Ok(None);
        }
    }
    let mut x = snf.v.mul_vec(&y)?;
    // Canonical coset representative: reduce modulo the kernel lattice.
    for (col, row) in kernel_hermite(&snf) {
        let q = x[col].div_floor(&row[col]);
        if !q.is_zero() {
            for (xi, ri) in (0..x.len()).zip(row.iter()) {
                let delta = &q * ri;
                *x.get_mut(xi) -= delta;
            }
        }
    }
    Ok(Some(x))
}

/// Returns `x` with `A·x = d`, or `None` when no integer solution exists.
///
/// The solution is the canonical representative of its coset modulo
/// `ker A` (entries at kernel pivots reduced into `[0, pivot)`).
pub fn image_membership(matrix: &IntMatrix, target: &IntVector) -> Result<Option<IntVector>, LatticeError> {
    solve(matrix, target)
}

/// Like [`image_membership`], but the solution must vanish outside `support`.
pub fn restricted_membership(
    matrix: &IntMatrix,
    target: &IntVector,
    support: &[usize],
) -> Result<Option<IntVector>, LatticeError> {
    let mut columns = support.to_vec();
    columns.sort_unstable();
    columns.dedup();
    let sub = matrix.select_columns(&columns)?;
    let Some(partial) = solve(&sub, target)? else {
        return Ok(None);
    };
    let mut x = IntVector::zeros(matrix.cols());
    for (k, &j) in columns.iter().enumerate() {
        *x.get_mut(j) = partial[k].clone();
    }
    Ok(Some(x))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &IntMatrix) -> Result<BigInt, LatticeError> {
    let n = matrix.rows();
    if n != matrix.cols() {
        return Err(LatticeError::NotSquare { rows: n, cols: matrix.cols() });
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| matrix.get(i, j).clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
}

/// `ℤ^rows / im A` as free rank plus invariant factors.
pub fn cokernel(matrix: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(matrix);
    let torsion = snf.diagonal().into_iter().take(snf.rank).filter(|d| !d.is_one()).collect();
    AbelianGroup::new(matrix.rows() - snf.rank, torsion)
}
