//! Exact linear algebra over `ℚ` and over prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Option<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return None;
        }
        Some(IntMatrix { rows: r, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    /// The rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Reduction modulo `p` as rows of residues.
    pub fn to_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let pb = BigInt::from(p);
        self.to_rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let r = x.mod_floor(&pb);
                        u64::try_from(r).expect("residue fits")
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank over `ℚ`.
    pub fn rank(&self) -> usize {
        rank_q(&self.to_rows(), self.cols)
    }
}

fn to_rational(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Reduced row echelon form over `ℚ`; returns the pivot columns.
fn rref_q(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, y) in line.iter_mut().zip(&pivot).take(cols) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank over `ℚ` of a matrix given by rows of length `cols`.
pub fn rank_q(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut m = to_rational(rows);
    rref_q(&mut m, cols).len()
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| x.signum());
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// A basis of the right kernel `{x : Mx = 0}` as primitive integer vectors.
pub fn kernel_q(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m = to_rational(rows);
    let pivots = rref_q(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Modular inverse in `𝔽_p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form over `𝔽_p` in place; returns the pivot columns.
pub fn rref_mod(m: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && line[col] != 0 {
                let f = line[col];
                for (x, y) in line.iter_mut().zip(&pivot).take(cols) {
                    *x = (*x + p - y * f % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(pivots.len());
    pivots
}

/// Rank over `𝔽_p`.
pub fn rank_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut m = rows.to_vec();
    rref_mod(&mut m, cols, p).len()
}

/// A basis of `{x : Mx = 0}` over `𝔽_p`.
pub fn kernel_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref_mod(&mut m, cols, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// The Gaussian binomial `[m choose k]_p`, the number of `k`-dimensional
/// subspaces of `𝔽_p^m`; zero outside `0 ≤ k ≤ m`.
pub fn gauss_binomial(m: i64, k: i64, p: u64) -> u128 {
    if k < 0 || m < 0 || k > m {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k as u32 {
        num *= p.pow(m as u32 - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}

/// Every `k`-dimensional subspace of `𝔽_p^m`, as a reduced row echelon basis
/// (`k × m`).
pub fn subspaces(m: usize, k: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row r, column c) with c > pivot r and c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let piv = pivots.clone();
                (pivots[r] + 1..m).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut basis = vec![vec![0u64; m]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                basis[r][pc] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                basis[r][col] = (c % p as u128) as u64;
                c /= p as u128;
            }
            out.push(basis);
        }
        // next combination of pivot columns
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < m - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
