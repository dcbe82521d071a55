//! Univariate view of a multivariate polynomial: one distinguished main
//! variable, coefficients in the remaining ones. Provides pseudo-division,
//! subresultant resultants and gcds, squarefree decomposition over the
//! coefficient fraction field, and rational root extraction.
//!
//! Denominators are cleared up front; only rational content is stripped
//! during the remainder sequences, so results over a parameter field are
//! canonical up to a unit of that field.

use crate::error::Error;
use crate::poly::{Mono, Poly, VarSet};
use crate::scalar::Scalar;
use num::rational::BigRational;
use num::BigInt;
use num::traits::{One, Signed, Zero};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub vars: Arc<VarSet>,
    pub main: usize,
    /// `coeffs[i]` multiplies `main^i`; the top entry is nonzero.
    pub coeffs: Vec<Poly>,
}

impl UniPoly {
    pub fn zero(vars: &Arc<VarSet>, main: usize) -> Self {
        UniPoly {
            vars: vars.clone(),
            main,
            coeffs: Vec::new(),
        }
    }

    /// Split a multivariate polynomial along `main`.
    pub fn from_poly(p: &Poly, main: usize) -> Self {
        let vars = p.vars().clone();
        let deg = p.degree_in(main);
        if deg < 0 {
            return UniPoly::zero(&vars, main);
        }
        let mut coeffs = vec![Poly::zero(&vars); deg as usize + 1];
        for (m, c) in p.terms() {
            let e = m.0[main] as usize;
            let mut m2 = m.clone();
            m2.0[main] = 0;
            coeffs[e].add_term(m2, c.clone());
        }
        let mut u = UniPoly { vars, main, coeffs };
        u.trim();
        u
    }

    pub fn to_poly(&self) -> Poly {
        let mut acc = Poly::zero(&self.vars);
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = Mono::var(self.vars.len(), self.main, i as u16);
            acc = &acc + &c.mul_mono(&m, &Scalar::one());
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> &Poly {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.vars))
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: &Poly) -> UniPoly {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = &*x * c;
        }
        out.trim();
        out
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) - &rhs.coeff(i));
        }
        let mut out = UniPoly {
            vars: self.vars.clone(),
            main: self.main,
            coeffs,
        };
        out.trim();
        out
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.vars, self.main);
        }
        let mut coeffs =
            vec![Poly::zero(&self.vars); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut out = UniPoly {
            vars: self.vars.clone(),
            main: self.main,
            coeffs,
        };
        out.trim();
        out
    }

    /// Shift by `main^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Poly::zero(&self.vars); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly {
            vars: self.vars.clone(),
            main: self.main,
            coeffs,
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.vars, self.main);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Scalar::from_int(i as i64)))
            .collect();
        let mut out = UniPoly {
            vars: self.vars.clone(),
            main: self.main,
            coeffs,
        };
        out.trim();
        out
    }

    /// Strip the rational content of all coefficients jointly.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = BigRational::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let rc = c.rational_content();
            content = gcd_rational(&content, &rc);
        }
        if content.is_zero() || content.is_one() {
            return self.clone();
        }
        let inv = Scalar::from_rational(content).inv();
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.scale(&inv);
        }
        out
    }

    /// Pseudo-remainder: the remainder of `lc(g)^(deg f - deg g + 1) * f` by `g`.
    pub fn pseudo_rem(&self, g: &UniPoly) -> UniPoly {
        assert!(!g.is_zero(), "pseudo-division by zero");
        let mut r = self.clone();
        if r.degree() < g.degree() {
            // Still multiply by the unit power for the standard convention.
            return r;
        }
        let d = g.lc().clone();
        let mut e = (self.degree() - g.degree() + 1) as i64;
        while !r.is_zero() && r.degree() >= g.degree() {
            let shift = (r.degree() - g.degree()) as usize;
            let lead = r.lc().clone();
            r = r.scale(&d).sub(&g.scale(&lead).shift(shift));
            e -= 1;
        }
        let mut dp = UniPoly {
            vars: self.vars.clone(),
            main: self.main,
            coeffs: vec![Poly::one(&self.vars)],
        };
        for _ in 0..e {
            dp = dp.scale(&d);
        }
        r.scale(&dp.coeffs[0])
    }

    /// Exact division over the coefficient fraction field: `Some(q)` with
    /// `self ~ q * g` up to a unit, `None` when `g` does not divide `self`.
    pub fn div_exact_field(&self, g: &UniPoly) -> Option<UniPoly> {
        assert!(!g.is_zero());
        if self.is_zero() {
            return Some(UniPoly::zero(&self.vars, self.main));
        }
        if self.degree() < g.degree() {
            return None;
        }
        let d = g.lc().clone();
        let mut r = self.clone();
        let mut q = UniPoly::zero(&self.vars, self.main);
        while !r.is_zero() && r.degree() >= g.degree() {
            let shift = (r.degree() - g.degree()) as usize;
            let lead = r.lc().clone();
            // r <- d*r - lead * x^shift * g ; q <- d*q + lead * x^shift
            q = q.scale(&d).sub(
                &UniPoly {
                    vars: self.vars.clone(),
                    main: self.main,
                    coeffs: vec![-&lead],
                }
                .shift(shift),
            );
            r = r.scale(&d).sub(&g.scale(&lead).shift(shift));
        }
        if r.is_zero() {
            Some(q.primitive())
        } else {
            None
        }
    }

    /// Proportionality over the coefficient fraction field.
    pub fn proportional_to(&self, other: &UniPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.degree() != other.degree() {
            return false;
        }
        let a0 = self.lc();
        let b0 = other.lc();
        for i in 0..self.coeffs.len() {
            if &(&self.coeff(i) * b0) - &(&other.coeff(i) * a0) != Poly::zero(&self.vars) {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

fn gcd_rational(a: &BigRational, b: &BigRational) -> BigRational {
    use num::Integer;
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    BigRational::new(
        a.numer().gcd(b.numer()),
        a.denom().lcm(b.denom()),
    )
}

/// Resultant of `f` and `g` with respect to `var`, by the subresultant
/// polynomial remainder sequence.
///
/// Sign-normalized by `(-1)^(n(n-1)/2)` with `n = max(deg f, deg g)`, the
/// Bezout-determinant convention, so that `resultant(f, ∂f) = lc(f)·disc(f)`.
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let a = UniPoly::from_poly(f, var);
    let b = UniPoly::from_poly(g, var);
    if a.degree() <= 0 && b.degree() <= 0 {
        return Err(Error::NoEliminationVariable);
    }
    let n = a.degree().max(b.degree());
    let r = resultant_uni(&a, &b);
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&r } else { r })
}

/// Subresultant resultant of two univariate views (Cohen alg. 3.3.7 shape).
pub fn resultant_uni(a0: &UniPoly, b0: &UniPoly) -> Poly {
    let vars = a0.vars.clone();
    if a0.is_zero() || b0.is_zero() {
        return Poly::zero(&vars);
    }
    let (mut a, mut b, mut sign) = if a0.degree() >= b0.degree() {
        (a0.clone(), b0.clone(), false)
    } else {
        let s = (a0.degree() * b0.degree()) % 2 == 1;
        (b0.clone(), a0.clone(), s)
    };
    if b.degree() == 0 {
        let r = b.coeffs[0].pow(a.degree() as u32);
        return if sign { -&r } else { r };
    }
    let mut g = Poly::one(&vars);
    let mut h = Poly::one(&vars);
    loop {
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign = !sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        // b <- r / (g * h^delta), exact in the coefficient ring
        let divisor = &g * &h.pow(delta as u32);
        b = UniPoly {
            vars: vars.clone(),
            main: a.main,
            coeffs: r
                .coeffs
                .iter()
                .map(|c| {
                    c.exact_div(&divisor)
                        .expect("subresultant division must be exact")
                })
                .collect(),
        };
        b.trim();
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as u32);
            num.exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant h update must be exact")
        };
        if b.is_zero() {
            return Poly::zero(&vars);
        }
        if b.degree() == 0 {
            // res = h^(1 - deg a) * b^(deg a), i.e. b^d / h^(d-1)
            let d = a.degree() as u32;
            let num = b.coeffs[0].pow(d);
            let r = num
                .exact_div(&h.pow(d.saturating_sub(1)))
                .expect("final subresultant division must be exact");
            return if sign { -&r } else { r };
        }
    }
}

/// Resultant via fraction-free Bareiss elimination of the Sylvester matrix.
/// Reference implementation used to cross-check the remainder-sequence one.
pub fn resultant_sylvester(f: &Poly, g: &Poly, var: usize) -> Result<Poly, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let a = UniPoly::from_poly(f, var);
    let b = UniPoly::from_poly(g, var);
    let (m, n) = (a.degree(), b.degree());
    if m <= 0 && n <= 0 {
        return Err(Error::NoEliminationVariable);
    }
    let vars = f.vars().clone();
    if m == 0 {
        return Ok(a.coeffs[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b.coeffs[0].pow(m as u32));
    }
    let size = (m + n) as usize;
    let mut mat = vec![vec![Poly::zero(&vars); size]; size];
    for i in 0..n as usize {
        for j in 0..=m as usize {
            mat[i][i + j] = a.coeff(m as usize - j);
        }
    }
    for i in 0..m as usize {
        for j in 0..=n as usize {
            mat[n as usize + i][i + j] = b.coeff(n as usize - j);
        }
    }
    // Bareiss fraction-free determinant.
    let mut sign = false;
    let mut prev = Poly::one(&vars);
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return Ok(Poly::zero(&vars));
            };
            mat.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num
                    .exact_div(&prev)
                    .expect("bareiss division must be exact");
            }
        }
        for row in mat.iter_mut().take(size).skip(k + 1) {
            row[k] = Poly::zero(&vars);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if sign { -&det } else { det })
}

/// Gcd over the coefficient fraction field, primitive up to a unit.
pub fn gcd_uni(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    while !b.is_zero() {
        let r = reduce_rem_primitive(&a, &b);
        a = b;
        b = r;
    }
    a.primitive()
}

/// Remainder of `a` by `b` up to a unit of the coefficient fraction field,
/// with the rational content stripped after every reduction step. Only the
/// gcd chain uses this; resultants need the exact pseudo-remainder.
fn reduce_rem_primitive(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let d = b.lc().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree() >= b.degree() {
        let shift = (r.degree() - b.degree()) as usize;
        let lead = r.lc().clone();
        r = r.scale(&d).sub(&b.scale(&lead).shift(shift)).primitive();
    }
    r
}

/// One squarefree factor with its multiplicity.
#[derive(Clone, Debug)]
pub struct SquarefreeFactor {
    pub factor: UniPoly,
    pub multiplicity: u32,
}

/// Squarefree decomposition over the coefficient fraction field by the
/// repeated-gcd chain. Factors are primitive; the product of
/// `factor^multiplicity` equals the input up to a unit of the field.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<SquarefreeFactor>, Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    // w[i] = product of factors with multiplicity > i (w[0] = squarefree part
    // of remaining, recursively on the gcd chain).
    let mut chain = vec![f.primitive()];
    loop {
        let last = chain.last().unwrap();
        if last.degree() == 0 {
            break;
        }
        let g = gcd_uni(last, &last.derivative());
        chain.push(g);
    }
    // chain[i] has the factors of multiplicity > i, each reduced by i.
    let mut w = Vec::new();
    for i in 0..chain.len() - 1 {
        let q = chain[i]
            .div_exact_field(&chain[i + 1])
            .expect("gcd chain division must be exact");
        w.push(q);
    }
    // factor of exact multiplicity i+1 = w[i] / w[i+1]
    let mut out = Vec::new();
    for i in 0..w.len() {
        let fi = if i + 1 < w.len() {
            w[i]
                .div_exact_field(&w[i + 1])
                .expect("squarefree chain division must be exact")
        } else {
            w[i].clone()
        };
        if fi.degree() > 0 {
            out.push(SquarefreeFactor {
                factor: fi,
                multiplicity: (i + 1) as u32,
            });
        }
    }
    Ok(out)
}

/// Multiplicity profile `(root-count, multiplicity)` over the fraction field
/// of the parameters.
///
/// The generic (squarefree) case is certified through a nonvanishing witness:
/// a rational specialization of the parameters that keeps the degree and
/// makes `gcd(f, f')` trivial proves the polynomial squarefree over the
/// parameter field. Inputs that fail every witness fall back to the exact
/// remainder-sequence decomposition.
pub fn multiplicity_profile(f: &UniPoly) -> Result<Vec<(i64, u32)>, Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.degree() <= 0 {
        return Ok(Vec::new());
    }
    let params: Vec<usize> = (0..f.vars.len())
        .filter(|&i| i != f.main && f.coeffs.iter().any(|c| c.degree_in(i) > 0))
        .collect();
    if !params.is_empty() {
        // witness values from a fixed deterministic sequence
        let seq: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
        for attempt in 0..4u64 {
            let assign: Vec<(usize, Scalar)> = params
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let v = seq[(k + attempt as usize * 3) % seq.len()] + attempt as i64;
                    (i, Scalar::from_int(v))
                })
                .collect();
            let spec = UniPoly {
                vars: f.vars.clone(),
                main: f.main,
                coeffs: f.coeffs.iter().map(|c| c.specialize(&assign)).collect(),
            };
            if spec.coeffs.last().map(|c| c.is_zero()).unwrap_or(true) {
                continue; // leading coefficient vanished at the witness
            }
            let g = gcd_uni(&spec, &spec.derivative());
            if g.degree() == 0 {
                return Ok(vec![(f.degree(), 1)]);
            }
        }
    }
    let dec = squarefree_decomposition(f)?;
    Ok(dec
        .iter()
        .map(|s| (s.factor.degree(), s.multiplicity))
        .collect())
}

/// Squarefree part (product of distinct irreducible factors, each once).
pub fn squarefree_part(f: &UniPoly) -> UniPoly {
    if f.is_zero() || f.degree() <= 0 {
        return f.clone();
    }
    let g = gcd_uni(f, &f.derivative());
    if g.degree() == 0 {
        return f.primitive();
    }
    f.div_exact_field(&g)
        .expect("squarefree part division must be exact")
}

/// Rational roots (with multiplicity) of a univariate polynomial with
/// rational constant coefficients, plus the root-free cofactor.
pub fn rational_roots(f: &UniPoly) -> Result<(Vec<(BigRational, u32)>, UniPoly), Error> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    for c in &f.coeffs {
        if !c.is_constant() {
            return Err(Error::Internal(
                "rational_roots requires constant coefficients".into(),
            ));
        }
    }
    // Clear denominators to integer coefficients.
    let mut den_lcm = BigInt::one();
    for c in &f.coeffs {
        use num::Integer;
        let q = c.constant_coeff();
        den_lcm = den_lcm.lcm(q.expect_rational().denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let q = c.constant_coeff();
            let q = q.expect_rational() * BigRational::from_integer(den_lcm.clone());
            assert!(q.denom().is_one());
            q.numer().clone()
        })
        .collect();
    let mut work = ints;
    // strip powers of the main variable (root 0)
    let mut roots: Vec<(BigRational, u32)> = Vec::new();
    let mut zero_mult = 0u32;
    while work.first().map(|c| c.is_zero()).unwrap_or(false) {
        work.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
    }
    loop {
        if work.len() <= 1 {
            break;
        }
        let a0 = work[0].clone();
        let an = work.last().unwrap().clone();
        let mut found = None;
        'outer: for p in divisors(&a0) {
            for q in divisors(&an) {
                for sgn in [1i64, -1] {
                    let cand = BigRational::new(&p * BigInt::from(sgn), q.clone());
                    if eval_int_poly(&work, &cand).is_zero() {
                        found = Some(cand);
                        break 'outer;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        // deflate by (q x - p) repeatedly
        let mut mult = 0u32;
        while eval_int_poly(&work, &root).is_zero() {
            work = deflate(&work, &root);
            mult += 1;
        }
        roots.push((root, mult));
    }
    // rebuild cofactor
    let vars = f.vars.clone();
    let mut cof = UniPoly {
        vars: vars.clone(),
        main: f.main,
        coeffs: work
            .iter()
            .map(|c| Poly::constant(&vars, Scalar::from_rational(BigRational::from_integer(c.clone()))))
            .collect(),
    };
    cof.trim();
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, cof))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::zero()];
    }
    // Trial division; inputs here stay small.
    let mut divs = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            divs.push(i.clone());
            divs.push(&n / &i);
        }
        i += 1;
    }
    divs.sort();
    divs.dedup();
    divs
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn deflate(coeffs: &[BigInt], root: &BigRational) -> Vec<BigInt> {
    // synthetic division by (x - root), then clear denominators
    let n = coeffs.len();
    let mut out = vec![BigRational::zero(); n - 1];
    let mut carry = BigRational::zero();
    for i in (1..n).rev() {
        let c = BigRational::from_integer(coeffs[i].clone()) + &carry;
        out[i - 1] = c.clone();
        carry = c * root;
    }
    use num::Integer;
    let mut lcm = BigInt::one();
    for c in &out {
        lcm = lcm.lcm(c.denom());
    }
    out.iter()
        .map(|c| {
            let v = c * BigRational::from_integer(lcm.clone());
            v.numer().clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn xy() -> Arc<VarSet> {
        VarSet::new(&["x", "y"], &[1, 1])
    }

    #[test]
    fn resultant_trivial_case() {
        let v = xy();
        let f = parse_poly(&v, "y^2 - x").unwrap();
        let g = parse_poly(&v, "y").unwrap();
        let r = resultant(&f, &g, 1).unwrap();
        assert_eq!(r.to_text(), "x");
    }

    #[test]
    fn resultant_of_derivative_is_lc_times_discriminant() {
        // f = (y-1)(y-2)(y-3): disc = 4, lc = 1.
        let v = xy();
        let f = parse_poly(&v, "y^3 - 6*y^2 + 11*y - 6").unwrap();
        let df = f.derivative(1);
        let r = resultant(&f, &df, 1).unwrap();
        assert_eq!(r.to_text(), "4");
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        let v = xy();
        let f = parse_poly(&v, "y^2 - x^2").unwrap();
        let g = parse_poly(&v, "y - x").unwrap();
        let r = resultant(&f, &g, 1).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_agrees_with_sylvester() {
        let v = xy();
        for (ft, gt) in [
            ("y^3 + x*y + 1", "2*y^2 - x^2*y + 3"),
            ("y^4 - x*y^2 + x^3", "y^2 + y + x"),
            ("3*y^2 + x", "y^5 - x*y + 2"),
        ] {
            let f = parse_poly(&v, ft).unwrap();
            let g = parse_poly(&v, gt).unwrap();
            let a = resultant_uni(&UniPoly::from_poly(&f, 1), &UniPoly::from_poly(&g, 1));
            let b = resultant_sylvester(&f, &g, 1).unwrap();
            assert_eq!(a, b, "mismatch for {ft} / {gt}");
        }
    }

    #[test]
    fn no_elimination_variable_is_an_error() {
        let v = xy();
        let f = parse_poly(&v, "x + 1").unwrap();
        let g = parse_poly(&v, "x - 1").unwrap();
        assert!(matches!(
            resultant(&f, &g, 1),
            Err(Error::NoEliminationVariable)
        ));
    }

    #[test]
    fn squarefree_decomposition_simple() {
        let v = xy();
        let f = parse_poly(&v, "x^2 - 2*x + 1").unwrap(); // (x-1)^2
        let g = parse_poly(&v, "x + 2").unwrap();
        let prod = &f * &g;
        let u = UniPoly::from_poly(&prod, 0);
        let dec = squarefree_decomposition(&u).unwrap();
        assert_eq!(dec.len(), 2);
        let m1: Vec<_> = dec.iter().map(|d| (d.factor.degree(), d.multiplicity)).collect();
        assert!(m1.contains(&(1, 1)));
        assert!(m1.contains(&(1, 2)));
        // reassembly up to unit
        let mut re = UniPoly {
            vars: v.clone(),
            main: 0,
            coeffs: vec![Poly::one(&v)],
        };
        for d in &dec {
            for _ in 0..d.multiplicity {
                re = re.mul(&d.factor);
            }
        }
        assert!(re.proportional_to(&u));
    }

    #[test]
    fn squarefree_with_parameters() {
        // (x - y)^2 (x + y): decomposition over Q(y)
        let v = xy();
        let f = parse_poly(&v, "x^2 - 2*x*y + y^2").unwrap();
        let g = parse_poly(&v, "x + y").unwrap();
        let u = UniPoly::from_poly(&(&f * &g), 0);
        let dec = squarefree_decomposition(&u).unwrap();
        let mults: Vec<u32> = dec.iter().map(|d| d.multiplicity).collect();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let v = xy();
        // (x-1)^2 (2x+3) x
        let f = parse_poly(&v, "x^2 - 2*x + 1").unwrap();
        let g = parse_poly(&v, "2*x + 3").unwrap();
        let h = parse_poly(&v, "x").unwrap();
        let u = UniPoly::from_poly(&(&(&f * &g) * &h), 0);
        let (roots, cof) = rational_roots(&u).unwrap();
        assert_eq!(cof.degree(), 0);
        let mut seen: Vec<(String, u32)> = roots
            .iter()
            .map(|(r, m)| (r.to_string(), *m))
            .collect();
        seen.sort();
        assert_eq!(
            seen,
            vec![
                ("-3/2".to_string(), 1),
                ("0".to_string(), 1),
                ("1".to_string(), 2)
            ]
        );
    }
}
