//! Kernel computation for large rational matrices by modular evaluation:
//! per-prime Gaussian elimination, Chinese remaindering, rational
//! reconstruction with a three-prime agreement rule, and mandatory exact
//! certification against the symbolic columns.
//!
//! Primes come from a fixed deterministic sequence of word-sized primes;
//! the random seed only controls evaluation points.

use crate::error::Error;
use crate::poly::Poly;
use crate::scalar::{inv_mod, mul_mod, rational_mod, sub_mod, Scalar};
use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::sync::{Mutex, OnceLock};

/// Deterministic sequence of 62-bit primes, descending from `2^62`.
pub fn nth_prime(n: usize) -> u64 {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let lock = PRIMES.get_or_init(|| Mutex::new(Vec::new()));
    let mut primes = lock.lock().unwrap();
    let mut candidate = primes.last().map(|&p| p - 2).unwrap_or((1u64 << 62) - 1);
    while primes.len() <= n {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        primes.push(candidate);
        candidate -= 2;
    }
    primes[n]
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = crate::scalar::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense matrix over `F_p`.
pub struct ModMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn new(p: u64, rows: usize, cols: usize) -> Self {
        ModMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(row, col), p);
            for j in col..self.cols {
                let v = mul_mod(self.get(row, j), inv, p);
                self.data[row * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i != row {
                    let f = self.get(i, col);
                    if f != 0 {
                        for j in col..self.cols {
                            let v = sub_mod(
                                self.get(i, j),
                                mul_mod(f, self.get(row, j), p),
                                p,
                            );
                            self.data[i * self.cols + j] = v;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&mut self) -> usize {
        self.rref().len()
    }

    /// Canonical kernel basis: one vector per free column, entry 1 at the
    /// free column. Identical across primes whenever the pivot structure is.
    pub fn kernel(&mut self) -> (Vec<usize>, Vec<Vec<u64>>) {
        let pivots = self.rref();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (col, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    let x = self.get(*r, free);
                    v[col] = if x == 0 { 0 } else { self.p - x };
                }
            }
            basis.push(v);
        }
        (pivots, basis)
    }
}

/// Rational reconstruction of `c mod m` with half-gcd bounds
/// `|num|, den <= sqrt(m/2)`.
pub fn rational_reconstruct(c: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound: BigInt = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), c.mod_floor_big(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let num = if t1.sign() == Sign::Minus { -r1 } else { r1.clone() };
    let den = t1.abs();
    use num::Integer;
    if num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(num, den))
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        use num::Integer;
        self.mod_floor(m)
    }
}

/// Combine `x ≡ a (mod m)` with `x ≡ b (mod p)`.
pub fn crt_combine(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let am = a.mod_floor_big(&pb);
    let (_, digits) = am.to_u64_digits();
    let am_u = digits.first().copied().unwrap_or(0);
    let m_mod_p = {
        let r = m.mod_floor_big(&pb);
        let (_, d) = r.to_u64_digits();
        d.first().copied().unwrap_or(0)
    };
    let diff = sub_mod(b % p, am_u, p);
    let t = mul_mod(diff, inv_mod(m_mod_p, p), p);
    a + m * BigInt::from(t)
}

/// A column of the kernel problem: fast modular evaluation plus, on demand,
/// the exact symbolic column used for certification.
pub struct KernelColumn<'a> {
    pub eval: Box<dyn Fn(&[u64], u64) -> Option<u64> + 'a>,
    pub symbolic: Box<dyn Fn() -> Poly + 'a>,
}

impl<'a> KernelColumn<'a> {
    pub fn from_poly(p: Poly) -> Self {
        let p2 = p.clone();
        KernelColumn {
            eval: Box::new(move |pt, q| p.eval_mod(pt, q)),
            symbolic: Box::new(move || p2.clone()),
        }
    }
}

/// Options for [`kernel_rational`].
pub struct KernelOptions {
    pub seed: u64,
    pub sample_budget: usize,
    pub point_dim: usize,
    /// Agreement rule: the reconstructed kernel must be stable across this
    /// many consecutive primes before certification.
    pub agreement: usize,
    pub max_primes: usize,
}

impl KernelOptions {
    pub fn new(seed: u64, sample_budget: usize, point_dim: usize) -> Self {
        KernelOptions {
            seed,
            sample_budget,
            point_dim,
            agreement: 3,
            max_primes: 24,
        }
    }
}

/// Kernel of the matrix whose rows are evaluations of each column at random
/// points, computed per prime, merged by CRT and rational reconstruction,
/// and certified exactly against the symbolic columns.
pub fn kernel_rational(
    columns: &[KernelColumn],
    opts: &KernelOptions,
) -> Result<Vec<Vec<BigRational>>, Error> {
    assert!(
        opts.sample_budget >= columns.len(),
        "sample budget below column count"
    );
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let points: Vec<Vec<u64>> = (0..opts.sample_budget)
        .map(|_| {
            (0..opts.point_dim)
                .map(|_| rng.gen_range(1..1_000_000u64))
                .collect()
        })
        .collect();

    let mut prime_idx = 0;
    let mut used: Vec<(u64, Vec<Vec<u64>>, Vec<usize>)> = Vec::new();
    let mut stable_count = 0usize;
    let mut last: Option<Vec<Vec<BigRational>>> = None;

    while prime_idx < opts.max_primes {
        let p = nth_prime(prime_idx);
        prime_idx += 1;
        let Some((pivots, basis)) = kernel_mod_p(columns, &points, p) else {
            continue; // bad reduction at this prime
        };
        // Drop primes whose pivot structure disagrees with the majority.
        if let Some((_, _, ref_pivots)) = used.first() {
            if *ref_pivots != pivots {
                if used.len() == 1 && basis.len() < used[0].1.len() {
                    // The earlier prime was unlucky (larger kernel); restart.
                    used.clear();
                    used.push((p, basis, pivots));
                    stable_count = 0;
                    last = None;
                }
                continue;
            }
        }
        used.push((p, basis, pivots));

        // CRT across all collected primes, then attempt reconstruction.
        let dim = used[0].1.len();
        if dim == 0 {
            return Ok(Vec::new());
        }
        let ncols = columns.len();
        let mut modulus = BigInt::one();
        let mut residues: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); ncols]; dim];
        for (p, basis, _) in &used {
            for (v, res_row) in basis.iter().zip(residues.iter_mut()) {
                for (x, r) in v.iter().zip(res_row.iter_mut()) {
                    *r = crt_combine(r, &modulus, *x, *p);
                }
            }
            modulus *= BigInt::from(*p);
        }
        let mut candidate = Vec::with_capacity(dim);
        let mut ok = true;
        'rec: for row in &residues {
            let mut v = Vec::with_capacity(ncols);
            for r in row {
                match rational_reconstruct(r, &modulus) {
                    Some(q) => v.push(q),
                    None => {
                        ok = false;
                        break 'rec;
                    }
                }
            }
            candidate.push(v);
        }
        if !ok {
            stable_count = 0;
            last = None;
            continue;
        }
        if last.as_ref() == Some(&candidate) {
            stable_count += 1;
        } else {
            last = Some(candidate);
            stable_count = 1;
        }
        if stable_count >= opts.agreement {
            let vectors = last.take().unwrap();
            return certify_kernel(columns, vectors);
        }
    }
    Err(Error::InsufficientPrimes)
}

fn kernel_mod_p(
    columns: &[KernelColumn],
    points: &[Vec<u64>],
    p: u64,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let mut m = ModMatrix::new(p, points.len(), columns.len());
    for (i, pt) in points.iter().enumerate() {
        for (j, col) in columns.iter().enumerate() {
            m.set(i, j, (col.eval)(pt, p)?);
        }
    }
    let (pivots, basis) = m.kernel();
    Some((pivots, basis))
}

fn certify_kernel(
    columns: &[KernelColumn],
    vectors: Vec<Vec<BigRational>>,
) -> Result<Vec<Vec<BigRational>>, Error> {
    for v in &vectors {
        let mut acc: Option<Poly> = None;
        for (c, col) in v.iter().zip(columns.iter()) {
            if c.is_zero() {
                continue;
            }
            let term = (col.symbolic)().scale(&Scalar::from_rational(c.clone()));
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        match acc {
            None => return Err(Error::UnluckyEvaluation),
            Some(a) if a.is_zero() => {}
            Some(_) => return Err(Error::UnluckyEvaluation),
        }
    }
    Ok(vectors)
}

/// Exact kernel of an explicit rational matrix through the modular engine,
/// certified against the exact matrix.
pub fn kernel_of_rational_matrix(
    rows: &[Vec<BigRational>],
    seed: u64,
) -> Result<Vec<Vec<BigRational>>, Error> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let ncols = rows[0].len();
    let mut prime_idx = 0usize;
    let mut used: Vec<(u64, Vec<Vec<u64>>, Vec<usize>)> = Vec::new();
    let mut stable = 0usize;
    let mut last: Option<Vec<Vec<BigRational>>> = None;
    let _ = seed; // points are the rows themselves; kept for interface parity
    while prime_idx < 32 {
        let p = nth_prime(prime_idx);
        prime_idx += 1;
        let mut m = ModMatrix::new(p, rows.len(), ncols);
        let mut good = true;
        'fill: for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                match rational_mod(v, p) {
                    Some(x) => m.set(i, j, x),
                    None => {
                        good = false;
                        break 'fill;
                    }
                }
            }
        }
        if !good {
            continue;
        }
        let (pivots, basis) = m.kernel();
        if let Some((_, _, ref_pivots)) = used.first() {
            if *ref_pivots != pivots {
                if basis.len() < used[0].1.len() {
                    used.clear();
                    used.push((p, basis, pivots));
                    stable = 0;
                    last = None;
                }
                continue;
            }
        }
        used.push((p, basis, pivots));
        let dim = used[0].1.len();
        if dim == 0 {
            return Ok(Vec::new());
        }
        let mut modulus = BigInt::one();
        let mut residues: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); ncols]; dim];
        for (p, basis, _) in &used {
            for (v, res_row) in basis.iter().zip(residues.iter_mut()) {
                for (x, r) in v.iter().zip(res_row.iter_mut()) {
                    *r = crt_combine(r, &modulus, *x, *p);
                }
            }
            modulus *= BigInt::from(*p);
        }
        let mut candidate = Vec::with_capacity(dim);
        let mut ok = true;
        'rec: for row in &residues {
            let mut v = Vec::with_capacity(ncols);
            for r in row {
                match rational_reconstruct(r, &modulus) {
                    Some(q) => v.push(q),
                    None => {
                        ok = false;
                        break 'rec;
                    }
                }
            }
            candidate.push(v);
        }
        if !ok {
            stable = 0;
            last = None;
            continue;
        }
        if last.as_ref() == Some(&candidate) {
            stable += 1;
        } else {
            last = Some(candidate);
            stable = 1;
        }
        if stable >= 3 {
            let vectors = last.take().unwrap();
            // exact certification: each vector annihilates every row
            for v in &vectors {
                for row in rows {
                    let mut acc = BigRational::zero();
                    for (a, b) in row.iter().zip(v.iter()) {
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                    if !acc.is_zero() {
                        return Err(Error::UnluckyEvaluation);
                    }
                }
            }
            return Ok(vectors);
        }
    }
    Err(Error::InsufficientPrimes)
}

/// Generic rank of an explicit rational matrix: maximum rank over the prime
/// sequence, stable across two primes.
pub fn rank_of_rational_matrix(rows: &[Vec<BigRational>]) -> Result<usize, Error> {
    if rows.is_empty() {
        return Ok(0);
    }
    let ncols = rows[0].len();
    let mut best: Option<usize> = None;
    let mut agree = 0;
    let mut prime_idx = 0;
    while prime_idx < 16 {
        let p = nth_prime(prime_idx);
        prime_idx += 1;
        let mut m = ModMatrix::new(p, rows.len(), ncols);
        let mut good = true;
        'fill: for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                match rational_mod(v, p) {
                    Some(x) => m.set(i, j, x),
                    None => {
                        good = false;
                        break 'fill;
                    }
                }
            }
        }
        if !good {
            continue;
        }
        let r = m.rank();
        match best {
            Some(b) if r == b => {
                agree += 1;
                if agree >= 2 {
                    return Ok(r);
                }
            }
            Some(b) if r < b => {} // unlucky prime, keep the larger rank
            _ => {
                best = Some(r);
                agree = 1;
            }
        }
    }
    Err(Error::InsufficientPrimes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarSet};

    #[test]
    fn prime_sequence_is_deterministic() {
        let a = nth_prime(0);
        let b = nth_prime(0);
        assert_eq!(a, b);
        assert!(is_prime_u64(a));
        assert!(nth_prime(1) < a);
        assert!(a < (1u64 << 62));
    }

    #[test]
    fn rational_reconstruction_round_trip() {
        let m = BigInt::from(nth_prime(0)) * BigInt::from(nth_prime(1));
        let q = BigRational::new(BigInt::from(-355), BigInt::from(113));
        // residue of q mod m
        use num::Integer;
        let num = q.numer().mod_floor(&m);
        let den_inv = {
            let d = q.denom().mod_floor(&m);
            // modular inverse via extended gcd
            let e = d.extended_gcd(&m);
            e.x.mod_floor(&m)
        };
        let residue = (num * den_inv).mod_floor(&m);
        let rec = rational_reconstruct(&residue, &m).unwrap();
        assert_eq!(rec, q);
    }

    #[test]
    fn kernel_of_polynomial_columns() {
        // columns 1, x, x+1 -> kernel (1, 1, -1)
        let v = VarSet::new(&["x"], &[1]);
        let cols: Vec<KernelColumn> = ["1", "x", "x + 1"]
            .iter()
            .map(|t| KernelColumn::from_poly(parse_poly(&v, t).unwrap()))
            .collect();
        let opts = KernelOptions::new(7, 8, 1);
        let k = kernel_rational(&cols, &opts).unwrap();
        assert_eq!(k.len(), 1);
        let v0 = &k[0];
        let s = &v0[0];
        assert_eq!(&v0[1] / s, BigRational::one());
        assert_eq!(&v0[2] / s, -BigRational::one());
    }

    #[test]
    fn explicit_matrix_kernel_dimension() {
        // 10x7 rank-5 matrix: A = B(10x5) * C(5x7) with random small integers.
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let b: Vec<Vec<i64>> = (0..10)
            .map(|_| (0..5).map(|_| rng.gen_range(-9..10)).collect())
            .collect();
        let c: Vec<Vec<i64>> = (0..5)
            .map(|_| (0..7).map(|_| rng.gen_range(-9..10)).collect())
            .collect();
        let rows: Vec<Vec<BigRational>> = (0..10)
            .map(|i| {
                (0..7)
                    .map(|j| {
                        let mut acc = 0i64;
                        for k in 0..5 {
                            acc += b[i][k] * c[k][j];
                        }
                        BigRational::from_integer(BigInt::from(acc))
                    })
                    .collect()
            })
            .collect();
        let k = kernel_of_rational_matrix(&rows, 3).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(rank_of_rational_matrix(&rows).unwrap(), 5);
    }
}
