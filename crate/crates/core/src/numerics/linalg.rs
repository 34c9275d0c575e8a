//! Nullspace vectors of the homogeneous (r × (r+1)) systems behind every
//! approximant in this crate.

use rug::{Complex, Float};

use super::scalar::{cabs, Context, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize, ctx: &Context) -> Self {
        Matrix { rows, cols, data: vec![S::zero(ctx); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `M·v`
    pub fn apply(&self, v: &[S], ctx: &Context) -> Vec<S> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(S::zero(ctx), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }
}

/// A nonzero solution of `M·v = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NullVector<S: Scalar> {
    pub vector: Vec<S>,
    /// `max |(M·v)_i|`; exactly zero in exact mode.
    pub residual: f64,
    /// Dimension of the nullspace (exact mode); 1 in floating mode unless
    /// the factorization exposes more.
    pub nullity: usize,
}

/// Nonzero `v` with `M·v = 0` for an `r × (r+1)` matrix.
///
/// In exact mode the matrix is reduced to row echelon form, the free
/// variable of highest column index is set to 1, every other free variable
/// to 0, and the pivots follow by back substitution. In floating mode the
/// vector is the last column of the unitary factor of `M^H`, which is of
/// unit length and minimises the residual.
pub fn nullspace_vector<S: Scalar>(matrix: &Matrix<S>, ctx: &Context) -> NullVector<S> {
    assert_eq!(matrix.cols(), matrix.rows() + 1, "nullspace_vector expects one more column than rows");
    S::nullspace(matrix, ctx)
}

/// Reduced row echelon solve, valid for any shape with `cols > rank`.
pub(crate) fn nullspace_rref<S: Scalar>(matrix: &Matrix<S>, ctx: &Context) -> NullVector<S> {
    let (rows, cols) = (matrix.rows, matrix.cols);
    let mut a: Vec<Vec<S>> = (0..rows).map(|r| matrix.row(r).to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_exact_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = S::one(ctx) / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_exact_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = a[r][j].clone();
                    a[i][j] = a[i][j].clone() - f.clone() * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let chosen = *free.last().expect("underdetermined system always has a free column");
    let mut v = vec![S::zero(ctx); cols];
    v[chosen] = S::one(ctx);
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][chosen].clone();
    }
    let residual = matrix.apply(&v, ctx).iter().map(|x| x.modulus()).fold(0.0, f64::max);
    NullVector { vector: v, residual, nullity: free.len() }
}

/// Householder QR of `M^H`; the trailing column of the unitary factor spans
/// (or lies in) the nullspace of `M`.
pub(crate) fn nullspace_householder(matrix: &Matrix<Complex>, ctx: &Context) -> NullVector<Complex> {
    let prec = ctx.precision;
    let rows = matrix.rows;
    let n = matrix.cols;
    // a = M^H, n × rows, column-major for convenient column access
    let mut a: Vec<Vec<Complex>> =
        (0..rows).map(|r| (0..n).map(|c| Complex::with_val(prec, matrix.get(r, c).conj_ref())).collect()).collect();
    let mut reflectors: Vec<Vec<Complex>> = Vec::with_capacity(rows);
    let scale =
        (0..rows).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| cabs(matrix.get(r, c))).fold(0.0, f64::max);
    let mut rank = 0;
    for k in 0..rows.min(n) {
        let x: Vec<Complex> = a[k][k..].to_vec();
        let norm = Float::with_val(
            prec,
            Float::sum(x.iter().map(|z| Float::with_val(prec, z.norm_ref())).collect::<Vec<_>>().iter()),
        )
        .sqrt();
        let norm_f = norm.to_f64();
        if norm_f <= ctx.zero_tol() * scale.max(f64::MIN_POSITIVE) {
            reflectors.push(Vec::new());
            continue;
        }
        rank += 1;
        // alpha = -e^{i arg x0} ||x||
        let x0 = &x[0];
        let x0_abs = Float::with_val(prec, x0.abs_ref());
        let phase = if x0_abs.is_zero() { Complex::with_val(prec, 1) } else { Complex::with_val(prec, x0 / &x0_abs) };
        let alpha = -Complex::with_val(prec, &phase * &norm);
        let mut v = x.clone();
        v[0] -= &alpha;
        let vnorm2 = Float::with_val(
            prec,
            Float::sum(v.iter().map(|z| Float::with_val(prec, z.norm_ref())).collect::<Vec<_>>().iter()),
        );
        if vnorm2.is_zero() {
            reflectors.push(Vec::new());
            continue;
        }
        let vscale = Float::with_val(prec, 2) / vnorm2;
        // apply H = I - vscale v v^H to columns k.. of a
        for col in a.iter_mut().skip(k) {
            apply_reflector(&v, &vscale, &mut col[k..], prec);
        }
        let mut stored = v;
        stored.push(Complex::with_val(prec, (&vscale, 0)));
        reflectors.push(stored);
    }
    // y = H_0 H_1 ... H_{r-1} e_{n-1}
    let mut y = vec![Complex::new(prec); n];
    y[n - 1] = Complex::with_val(prec, 1);
    for (k, refl) in reflectors.iter().enumerate().rev() {
        if refl.is_empty() {
            continue;
        }
        let (v, s) = refl.split_at(refl.len() - 1);
        let vscale = s[0].real().clone();
        apply_reflector(v, &vscale, &mut y[k..], prec);
    }
    let residual = matrix.apply(&y, ctx).iter().map(cabs).fold(0.0, f64::max);
    NullVector { vector: y, residual, nullity: n - rank }
}

fn apply_reflector(v: &[Complex], vscale: &Float, x: &mut [Complex], prec: u32) {
    // x <- x - vscale * v * (v^H x)
    let mut dot = Complex::new(prec);
    for (vi, xi) in v.iter().zip(x.iter()) {
        dot += Complex::with_val(prec, vi.conj_ref()) * xi;
    }
    dot *= vscale;
    for (vi, xi) in v.iter().zip(x.iter_mut()) {
        *xi -= Complex::with_val(prec, vi * &dot);
    }
}
