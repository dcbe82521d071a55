//! Sparse multivariate polynomials over [`Scalar`], with a weight attached to
//! every variable and weighted-degree bookkeeping.
//!
//! The canonical text form used throughout the crate (and in every JSON
//! report) sorts terms by graded-lexicographic order on exponent vectors,
//! leading term first, with rational coefficients printed as `num/den`,
//! e.g. `3/2*q*Q^2*p`.

use crate::error::Error;
use crate::scalar::Scalar;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// An ordered list of variable names with one nonnegative weight per variable.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<i64>,
}

impl VarSet {
    pub fn new(names: &[&str], weights: &[i64]) -> Arc<Self> {
        assert_eq!(names.len(), weights.len());
        Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector. Entries are fixed-width; arithmetic that overflows is a
/// hard error rather than silent wraparound.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u16) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Mono(v)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_sub(b).expect("monomial division underflow"))
                .collect(),
        )
    }

    pub fn weight(&self, vars: &VarSet) -> i64 {
        self.0
            .iter()
            .zip(vars.weights())
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lex: total degree first, then lexicographic on exponents.
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Scalar) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Poly::constant(vars, Scalar::one())
    }

    pub fn int(vars: &Arc<VarSet>, n: i64) -> Self {
        Poly::constant(vars, Scalar::from_int(n))
    }

    pub fn frac(vars: &Arc<VarSet>, num: i64, den: i64) -> Self {
        Poly::constant(vars, Scalar::from_frac(num, den))
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut p = Poly::zero(vars);
        p.terms.insert(Mono::var(vars.len(), i, 1), Scalar::one());
        p
    }

    pub fn var_pow(vars: &Arc<VarSet>, name: &str, e: u16) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut p = Poly::zero(vars);
        p.terms.insert(Mono::var(vars.len(), i, e), Scalar::one());
        p
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Mono, c: Scalar) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            assert_eq!(m.0.len(), vars.len());
            p.terms.insert(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1
            && self
                .terms
                .keys()
                .all(|m| m.total_degree() == 0)
    }

    pub fn constant_coeff(&self) -> Scalar {
        self.coeff(&Mono::one(self.vars.len()))
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m.0[var] as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Maximal weighted degree over all terms; `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.weight(&self.vars)).max()
    }

    pub fn is_weighted_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.weight(&self.vars));
        match it.next() {
            None => true,
            Some(w) => it.all(|w2| w2 == w),
        }
    }

    /// The weight-`w` homogeneous component.
    pub fn weight_component(&self, w: i64) -> Poly {
        let mut p = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.weight(&self.vars) == w {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut p = Poly::zero(&self.vars);
        for (m, v) in &self.terms {
            p.terms.insert(m.clone(), v * c);
        }
        p
    }

    pub fn mul_mono(&self, m: &Mono, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut p = Poly::zero(&self.vars);
        for (mm, v) in &self.terms {
            p.terms.insert(mm.mul(m), v * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut p = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            p.add_term(m2, c * &Scalar::from_int(e as i64));
        }
        p
    }

    /// Substitute `replacement` for the variable at `var`. The replacement
    /// must live on the same variable set.
    pub fn substitute(&self, var: usize, replacement: &Poly) -> Poly {
        assert!(Arc::ptr_eq(&self.vars, &replacement.vars) || self.vars == replacement.vars);
        // Group by exponent of `var`, then Horner over cached powers.
        let mut by_exp: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            by_exp
                .entry(e)
                .or_insert_with(|| Poly::zero(&self.vars))
                .add_term(m2, c.clone());
        }
        let mut acc = Poly::zero(&self.vars);
        let mut pow_cache: Vec<Poly> = vec![Poly::one(&self.vars)];
        for (e, part) in by_exp {
            while pow_cache.len() <= e as usize {
                let next = &pow_cache[pow_cache.len() - 1] * replacement;
                pow_cache.push(next);
            }
            acc = &acc + &(&part * &pow_cache[e as usize]);
        }
        acc
    }

    /// Map this polynomial into another variable set; `mapping[i]` is the
    /// index in `target` of our variable `i`.
    pub fn embed(&self, target: &Arc<VarSet>, mapping: &[usize]) -> Poly {
        assert_eq!(mapping.len(), self.vars.len());
        let mut p = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut v = vec![0u16; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                v[mapping[i]] = v[mapping[i]].checked_add(e).expect("exponent overflow");
            }
            p.add_term(Mono(v), c.clone());
        }
        p
    }

    /// Embed by matching variable names; every variable of `self` must exist
    /// in `target`.
    pub fn embed_by_name(&self, target: &Arc<VarSet>) -> Poly {
        let mapping: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .unwrap_or_else(|| panic!("variable {n} missing from target set"))
            })
            .collect();
        self.embed(target, &mapping)
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Evaluate modulo a prime; `None` when any coefficient has bad reduction.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        use crate::scalar::{add_mod, mul_mod, pow_mod};
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.to_mod(p)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, pow_mod(point[i] % p, e as u64, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        Some(acc)
    }

    /// Substitute scalars for a subset of variables, producing a polynomial
    /// on the same variable set with those variables eliminated.
    pub fn specialize(&self, assignments: &[(usize, Scalar)]) -> Poly {
        let mut p = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = m.clone();
            for (var, val) in assignments {
                let e = m2.0[*var];
                if e > 0 {
                    coeff *= &val.pow(e as u32);
                    m2.0[*var] = 0;
                }
            }
            p.add_term(m2, coeff);
        }
        p
    }

    /// Positive rational content: gcd of the numerators of all rational
    /// components over lcm of denominators. Zero polynomial has content 1.
    pub fn rational_content(&self) -> BigRational {
        use num::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for q in [c.rational_part(), c.extension_part()] {
                if q.is_zero() {
                    continue;
                }
                num_gcd = num_gcd.gcd(q.numer());
                den_lcm = den_lcm.lcm(q.denom());
            }
        }
        if num_gcd.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num_gcd, den_lcm)
        }
    }

    /// Divide out the rational content and normalize the leading coefficient
    /// to be positive (for rational polys) — the canonical representative of
    /// the polynomial up to a rational unit.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let content = Scalar::from_rational(self.rational_content());
        let mut p = self.scale(&content.inv());
        if let Some((_, lc)) = p.leading() {
            if lc.is_rational() && lc.rational_part().is_negative() {
                p = -&p;
            }
        }
        p
    }

    /// Exact division test: returns `Some(quotient)` when `divisor` divides
    /// `self` in the polynomial ring, `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.vars);
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (lm, lc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&lm) {
                return None;
            }
            let qm = lm.div(&dm);
            let qc = &lc / &dc;
            quo.add_term(qm.clone(), qc.clone());
            rem = &rem - &divisor.mul_mono(&qm, &qc);
        }
        Some(quo)
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        format!("{}", self)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut p = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            p.terms.insert(m.clone(), -c);
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert!(Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars);
        let mut p = Poly::zero(&self.vars);
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let c_str = c.to_string();
            let (neg, mag) = if let Some(stripped) = c_str.strip_prefix('-') {
                (true, stripped.to_string())
            } else {
                (false, c_str)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.total_degree() == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if mag != "1" {
                factors.push(mag);
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars.names()[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars.names()[i], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parse the canonical text form back into a polynomial over `vars`.
pub fn parse_poly(vars: &Arc<VarSet>, text: &str) -> Result<Poly, Error> {
    Parser {
        vars: vars.clone(),
        bytes: text.as_bytes(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a> {
    vars: Arc<VarSet>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Poly, Error> {
        let mut acc = Poly::zero(&self.vars);
        self.skip_ws();
        if self.peek() == Some(b'0') && self.pos + 1 == self.bytes.len() {
            return Ok(acc);
        }
        let mut sign = Scalar::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -Scalar::one();
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let term = self.parse_term()?;
            acc = &acc + &term.scale(&sign);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = Scalar::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Scalar::one();
                }
                Some(c) => {
                    return Err(Error::Parse(format!(
                        "unexpected character '{}' at {}",
                        c as char, self.pos
                    )))
                }
            }
            self.skip_ws();
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly, Error> {
        self.skip_ws();
        let mut coeff = Scalar::one();
        let mut mono = Mono::one(self.vars.len());
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let q = self.parse_rational()?;
                    coeff *= &Scalar::from_rational(q);
                    any = true;
                }
                Some(b'(') => {
                    let s = self.parse_extension_scalar()?;
                    coeff *= &s;
                    any = true;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let (idx, exp) = self.parse_var_power()?;
                    let mut m = Mono::one(self.vars.len());
                    m.0[idx] = exp;
                    mono = mono.mul(&m);
                    any = true;
                }
                _ => break,
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if !any {
            return Err(Error::Parse(format!("empty term at {}", self.pos)));
        }
        Ok(Poly::monomial(&self.vars, mono, coeff))
    }

    fn parse_rational(&mut self) -> Result<BigRational, Error> {
        let num = self.parse_integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.parse_integer()?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse(format!("expected integer at {}", start)));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(e.to_string()))
    }

    /// `(a+b*r)`, `(a-b*r)`, `(b*r)`, `(r)`, `(-r)` forms.
    fn parse_extension_scalar(&mut self) -> Result<Scalar, Error> {
        assert_eq!(self.peek(), Some(b'('));
        self.pos += 1;
        let mut rat = BigRational::zero();
        let mut ext = BigRational::zero();
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            self.skip_ws();
            let part = if matches!(self.peek(), Some(b'0'..=b'9')) {
                let q = self.parse_rational()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.expect(b'r')?;
                    (q, true)
                } else {
                    (q, false)
                }
            } else if self.peek() == Some(b'r') {
                self.pos += 1;
                (BigRational::one(), true)
            } else {
                return Err(Error::Parse(format!(
                    "bad extension scalar at {}",
                    self.pos
                )));
            };
            if part.1 {
                ext += &sign * part.0;
            } else {
                rat += &sign * part.0;
            }
            self.skip_ws();
            match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                _ => return Err(Error::Parse(format!("unterminated scalar at {}", self.pos))),
            }
        }
        Ok(Scalar::from_parts(rat, ext))
    }

    fn parse_var_power(&mut self) -> Result<(usize, u16), Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
        let mut exp = 1u16;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.parse_integer()?;
            exp = e
                .try_into()
                .ok()
                .and_then(|e: i64| u16::try_from(e).ok())
                .ok_or_else(|| Error::Parse("exponent out of range".into()))?;
        }
        Ok((idx, exp))
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{}' at {}",
                c as char, self.pos
            )))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ')) {
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv() -> Arc<VarSet> {
        VarSet::new(&["q", "Q", "p", "P"], &[2, 2, 3, 3])
    }

    #[test]
    fn display_matches_canonical_form() {
        let v = qv();
        let p = Poly::frac(&v, 3, 2) * Poly::var(&v, "q") * Poly::var_pow(&v, "Q", 2)
            * Poly::var(&v, "p");
        assert_eq!(p.to_string(), "3/2*q*Q^2*p");
        let s = &p - &Poly::int(&v, 7);
        assert_eq!(s.to_string(), "3/2*q*Q^2*p - 7");
    }

    #[test]
    fn parse_round_trip() {
        let v = qv();
        let p = parse_poly(&v, "3/2*q*Q^2*p - 7 + q^3").unwrap();
        let again = parse_poly(&v, &p.to_text()).unwrap();
        assert_eq!(p, again);
        assert_eq!(p.to_text(), "3/2*q*Q^2*p + q^3 - 7");
    }

    #[test]
    fn weighted_degree_of_product_adds() {
        let v = qv();
        let f = parse_poly(&v, "q^3 - 3/2*q*Q^2").unwrap();
        let g = parse_poly(&v, "p^2 - q*Q*p").unwrap();
        assert!(f.is_weighted_homogeneous());
        assert_eq!(f.weighted_degree(), Some(6));
        assert_eq!((&f * &g).weighted_degree(), Some(13));
    }

    #[test]
    fn exact_division() {
        let v = qv();
        let f = parse_poly(&v, "q^2 - Q^2").unwrap();
        let g = parse_poly(&v, "q - Q").unwrap();
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q.to_text(), "q + Q");
        assert!(parse_poly(&v, "q^2 + 1").unwrap().exact_div(&g).is_none());
    }

    #[test]
    fn substitution_horner() {
        let v = qv();
        let f = parse_poly(&v, "q^2 + q*p + 1").unwrap();
        let r = parse_poly(&v, "Q + 1").unwrap();
        let sub = f.substitute(0, &r);
        let expect = parse_poly(&v, "Q^2 + 2*Q + Q*p + p + 2").unwrap();
        assert_eq!(sub, expect);
    }

    #[test]
    fn extension_scalar_round_trip() {
        let v = qv();
        let p = Poly::constant(&v, Scalar::rho()).mul_mono(&Mono::var(4, 1, 2), &Scalar::one());
        let text = p.to_text();
        assert_eq!(text, "(r)*Q^2");
        assert_eq!(parse_poly(&v, &text).unwrap(), p);
    }
}
