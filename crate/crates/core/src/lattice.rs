//! Integer lattice normal forms over arbitrary-precision integers.
//!
//! Two reductions are provided. [`Echelon`] is a row-echelon basis whose
//! pivots are chosen from the last column backwards; reducing a vector
//! against it yields a canonical representative of the vector's coset.
//! [`Snf`] is a Smith normal form `U·A·V = D` with the transforms kept,
//! which is what order, discrete-log and division computations need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<BigInt>;
pub type Matrix = Vec<Vec<BigInt>>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![BigInt::zero(); dim]
}

pub fn unit_vector(dim: usize, k: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[k] = BigInt::one();
    v
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|k| unit_vector(n, k)).collect()
}

/// `x -= q * y`
fn sub_scaled(x: &mut [BigInt], y: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (a, b) in x.iter_mut().zip(y) {
        *a -= q * b;
    }
}

pub fn add_into(x: &mut [BigInt], y: &[BigInt]) {
    for (a, b) in x.iter_mut().zip(y) {
        *a += b;
    }
}

fn negate(x: &mut [BigInt]) {
    for a in x.iter_mut() {
        *a = -std::mem::take(a);
    }
}

/// Row vector times matrix.
pub fn row_times(x: &[BigInt], m: &Matrix) -> Vector {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = zero_vector(cols);
    for (xi, row) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o += xi * r;
        }
    }
    out
}

/// Echelon basis of a sublattice of `Z^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    /// `(pivot column, row)`, pivot columns strictly decreasing. Each row is
    /// zero right of its pivot and the pivot entry is positive.
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(dim: usize, generators: &[Vector]) -> Self {
        let mut pending: Vec<Vector> = generators.iter().filter(|r| !is_zero(r)).cloned().collect();
        let mut rows = Vec::new();
        for col in (0..dim).rev() {
            loop {
                let pick = pending
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r[col].is_zero())
                    .min_by(|a, b| a.1[col].abs().cmp(&b.1[col].abs()))
                    .map(|(k, _)| k);
                let Some(k) = pick else { break };
                let mut pivot = pending.swap_remove(k);
                let mut settled = true;
                for r in pending.iter_mut() {
                    if !r[col].is_zero() {
                        let q = r[col].div_floor(&pivot[col]);
                        sub_scaled(r, &pivot, &q);
                        settled &= r[col].is_zero();
                    }
                }
                if settled {
                    if pivot[col].is_negative() {
                        negate(&mut pivot);
                    }
                    rows.push((col, pivot));
                    break;
                }
                pending.push(pivot);
            }
            pending.retain(|r| !is_zero(r));
        }
        Echelon { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical representative of `x + L`.
    pub fn reduce(&self, x: &mut [BigInt]) {
        for (col, row) in &self.rows {
            let q = x[*col].div_floor(&row[*col]);
            sub_scaled(x, row, &q);
        }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let mut y = x.to_vec();
        self.reduce(&mut y);
        is_zero(&y)
    }

    /// Basis rows (pivot column, row).
    pub fn basis(&self) -> &[(usize, Vector)] {
        &self.rows
    }
}

/// Smith normal form `U·A·V = diag(d_1, …, d_r, 0, …)` with `d_k | d_{k+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero invariant factors, all positive.
    pub diag: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rows: usize,
    pub cols: usize,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

pub fn smith(a: &Matrix, cols: usize) -> Snf {
    let rows = a.len();
    let mut a = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    let swap_cols = |a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, j: usize, k: usize| {
        if j == k {
            return;
        }
        for r in a.iter_mut() {
            r.swap(j, k);
        }
        for r in v.iter_mut() {
            r.swap(j, k);
        }
        v_inv.swap(j, k);
    };
    // col_j -= q * col_t
    let col_op = |a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, j: usize, t: usize, q: &BigInt| {
        for r in a.iter_mut() {
            let s = q * &r[t];
            r[j] -= s;
        }
        for r in v.iter_mut() {
            let s = q * &r[t];
            r[j] -= s;
        }
        let row_j = v_inv[j].clone();
        for (x, y) in v_inv[t].iter_mut().zip(&row_j) {
            *x += q * y;
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, &mut v, &mut v_inv, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    sub_scaled(&mut tail[0], &head[t], &q);
                    let (uh, ut) = u.split_at_mut(i);
                    sub_scaled(&mut ut[0], &uh[t], &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_op(&mut a, &mut v, &mut v_inv, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a smaller remainder sits in row t or column t; move it to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, &mut v, &mut v_inv, t, best.1);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    add_into(&mut head[t], &tail[0]);
                    let (uh, ut) = u.split_at_mut(i);
                    add_into(&mut uh[t], &ut[0]);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate(&mut a[t]);
            negate(&mut u[t]);
        }
        t += 1;
    }
    let diag = (0..t).map(|k| a[k][k].clone()).collect();
    Snf { diag, u, v, v_inv, rows, cols }
}

/// Combine `m ≡ a1 (mod n1)` with `m ≡ a2 (mod n2)`.
pub fn crt(a1: &BigInt, n1: &BigInt, a2: &BigInt, n2: &BigInt) -> Option<(BigInt, BigInt)> {
    let eg = n1.extended_gcd(n2);
    let g = eg.gcd;
    let diff = a2 - a1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let lcm = n1 / &g * n2;
    let k = (&diff / &g * &eg.x).mod_floor(&(n2 / &g));
    Some(((a1 + n1 * k).mod_floor(&lcm), lcm))
}

/// Solutions of `a·y ≡ b (mod n)` as `(y0, step)`: all `y0 + t·step`.
pub fn solve_linear_congruence(a: &BigInt, b: &BigInt, n: &BigInt) -> Option<(BigInt, BigInt)> {
    let eg = a.mod_floor(n).extended_gcd(n);
    let g = eg.gcd;
    if g.is_zero() {
        // n == 0 cannot happen for a modulus; guard anyway
        return None;
    }
    if !b.is_multiple_of(&g) {
        return None;
    }
    let step = n / &g;
    let y0 = if step.is_one() { BigInt::zero() } else { (b / &g * &eg.x).mod_floor(&step) };
    Some((y0, step))
}
