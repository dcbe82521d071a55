//! Kovalevskaya analysis of the DGR flow: the initial locus of leading
//! Laurent coefficients, the Kovalevskaya matrix and its exponents, and the
//! order-by-order solution of the principal balance with free parameters
//! `gamma1, gamma2, gamma3` inserted at the resonances.

use crate::error::Error;
use crate::linalg::Matrix;
use crate::mechanics::{HamiltonianSystem, DEF_A};
use crate::poly::{parse_poly, Mono, Poly, VarSet};
use crate::scalar::Scalar;
use crate::upoly::{gcd_uni, rational_roots, resultant, UniPoly};
use num::rational::BigRational;
use num::traits::Zero;
use std::sync::Arc;

/// Leading exponents of `(q, Q, p, P)` in the Laurent ansatz.
pub const LEADING_EXPONENTS: [i64; 4] = [2, 2, 3, 3];

/// Free parameters of the principal balance plus the deformation parameter,
/// with the weights induced by the ansatz.
pub fn gamma_vars() -> Arc<VarSet> {
    VarSet::new(&["g1", "g2", "g3", "a"], &[1, 4, 6, 4])
}

/// Truncated Laurent series in `t` with polynomial coefficients.
///
/// `coeffs[i]` multiplies `t^(min_pow + i)`. Coefficients with `t`-power
/// above `reliable` are not certified (they would receive corrections from
/// deeper recursion orders) and are never exposed.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub vars: Arc<VarSet>,
    pub min_pow: i64,
    pub coeffs: Vec<Poly>,
    pub reliable: i64,
}

pub const FULLY_RELIABLE: i64 = i64::MAX / 4;

impl LaurentSeries {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentSeries {
            vars: vars.clone(),
            min_pow: 0,
            coeffs: Vec::new(),
            reliable: FULLY_RELIABLE,
        }
    }

    pub fn constant(vars: &Arc<VarSet>, p: Poly) -> Self {
        let mut s = LaurentSeries::zero(vars);
        if !p.is_zero() {
            s.coeffs.push(p);
        }
        s
    }

    pub fn coeff(&self, t_pow: i64) -> Poly {
        if t_pow > self.reliable {
            panic!("requested coefficient beyond certified truncation");
        }
        let idx = t_pow - self.min_pow;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Poly::zero(&self.vars)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn set_coeff(&mut self, t_pow: i64, p: Poly) {
        if self.coeffs.is_empty() {
            self.min_pow = t_pow;
            self.coeffs.push(p);
            return;
        }
        if t_pow < self.min_pow {
            let pad = (self.min_pow - t_pow) as usize;
            let mut newc = vec![Poly::zero(&self.vars); pad];
            newc.extend(self.coeffs.drain(..));
            self.coeffs = newc;
            self.min_pow = t_pow;
        }
        let idx = (t_pow - self.min_pow) as usize;
        while self.coeffs.len() <= idx {
            self.coeffs.push(Poly::zero(&self.vars));
        }
        self.coeffs[idx] = p;
    }

    /// Lowest `t`-power with a nonzero coefficient, within the certified
    /// window.
    pub fn leading_pow(&self) -> Option<i64> {
        for (i, c) in self.coeffs.iter().enumerate() {
            let pow = self.min_pow + i as i64;
            if pow > self.reliable {
                break;
            }
            if !c.is_zero() {
                return Some(pow);
            }
        }
        None
    }

    /// Largest pole order: `k` such that the `t^(-k)` coefficient is the
    /// deepest nonzero one; 0 or negative when there is no pole.
    pub fn pole_order(&self) -> i64 {
        match self.leading_pow() {
            Some(p) => -p,
            None => i64::MIN / 4,
        }
    }

    pub fn is_zero_within_reliability(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| self.min_pow + i as i64 > self.reliable || c.is_zero())
    }

    fn effective_min(&self) -> i64 {
        self.min_pow
    }

    pub fn add(&self, rhs: &LaurentSeries) -> LaurentSeries {
        let reliable = self.reliable.min(rhs.reliable);
        let mut out = LaurentSeries {
            vars: self.vars.clone(),
            min_pow: 0,
            coeffs: Vec::new(),
            reliable,
        };
        if self.coeffs.is_empty() && rhs.coeffs.is_empty() {
            return out;
        }
        let lo = if self.coeffs.is_empty() {
            rhs.min_pow
        } else if rhs.coeffs.is_empty() {
            self.min_pow
        } else {
            self.min_pow.min(rhs.min_pow)
        };
        let hi_a = self.min_pow + self.coeffs.len() as i64 - 1;
        let hi_b = rhs.min_pow + rhs.coeffs.len() as i64 - 1;
        let hi = hi_a.max(hi_b).min(reliable);
        out.min_pow = lo;
        for pow in lo..=hi {
            let a = self.coeff_unchecked(pow);
            let b = rhs.coeff_unchecked(pow);
            out.coeffs.push(&a + &b);
        }
        out
    }

    fn coeff_unchecked(&self, t_pow: i64) -> Poly {
        let idx = t_pow - self.min_pow;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Poly::zero(&self.vars)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentSeries {
        LaurentSeries {
            vars: self.vars.clone(),
            min_pow: self.min_pow,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
            reliable: self.reliable,
        }
    }

    pub fn scale_poly(&self, c: &Poly) -> LaurentSeries {
        LaurentSeries {
            vars: self.vars.clone(),
            min_pow: self.min_pow,
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
            reliable: self.reliable,
        }
    }

    /// Product computed only up to coefficient `hi` (inclusive).
    pub fn mul_trunc(&self, rhs: &LaurentSeries, hi: i64) -> LaurentSeries {
        let mut out = self.mul_impl(rhs, Some(hi));
        out.reliable = out.reliable.min(hi);
        out
    }

    pub fn mul(&self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_impl(rhs, None)
    }

    fn mul_impl(&self, rhs: &LaurentSeries, cutoff: Option<i64>) -> LaurentSeries {
        // error propagation: the first uncertified power of the product is
        // min(reliable_a + 1 + min_b, reliable_b + 1 + min_a)
        let reliable = if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            self.reliable.min(rhs.reliable)
        } else {
            (self
                .reliable
                .saturating_add(rhs.effective_min()))
            .min(rhs.reliable.saturating_add(self.effective_min()))
        };
        let mut out = LaurentSeries {
            vars: self.vars.clone(),
            min_pow: self.min_pow + rhs.min_pow,
            coeffs: Vec::new(),
            reliable,
        };
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            out.min_pow = 0;
            return out;
        }
        let mut hi =
            (out.min_pow + (self.coeffs.len() + rhs.coeffs.len()) as i64 - 2).min(reliable);
        if let Some(c) = cutoff {
            hi = hi.min(c);
        }
        if hi < out.min_pow {
            out.coeffs.clear();
            return out;
        }
        out.coeffs = vec![Poly::zero(&self.vars); (hi - out.min_pow + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let pow = self.min_pow + i as i64 + rhs.min_pow + j as i64;
                if pow > hi {
                    continue;
                }
                let idx = (pow - out.min_pow) as usize;
                out.coeffs[idx] = &out.coeffs[idx] + &(a * b);
            }
        }
        out
    }

    /// `t`-shift: multiply by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            vars: self.vars.clone(),
            min_pow: self.min_pow + k,
            coeffs: self.coeffs.clone(),
            reliable: self.reliable.saturating_add(k),
        }
    }

    /// Formal derivative in `t`.
    pub fn d_dt(&self) -> LaurentSeries {
        let mut out = LaurentSeries {
            vars: self.vars.clone(),
            min_pow: self.min_pow - 1,
            coeffs: Vec::with_capacity(self.coeffs.len()),
            reliable: self.reliable - 1,
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            let pow = self.min_pow + i as i64;
            out.coeffs.push(c.scale(&Scalar::from_int(pow)));
        }
        out
    }
}

/// Evaluate a polynomial in the phase variables on Laurent series. The `a`
/// slot receives the constant series of the coefficient-ring variable `a`.
pub fn poly_on_series(f: &Poly, series: &[LaurentSeries; 4]) -> LaurentSeries {
    poly_on_series_impl(f, series, None)
}

/// Same, but with every product truncated above `t^hi`.
pub fn poly_on_series_trunc(f: &Poly, series: &[LaurentSeries; 4], hi: i64) -> LaurentSeries {
    poly_on_series_impl(f, series, Some(hi))
}

fn poly_on_series_impl(
    f: &Poly,
    series: &[LaurentSeries; 4],
    cutoff: Option<i64>,
) -> LaurentSeries {
    let gv = series[0].vars.clone();
    let a_series = LaurentSeries::constant(&gv, Poly::var(&gv, "a"));
    let slots = [&series[0], &series[1], &series[2], &series[3], &a_series];
    // Cut intermediate products enough above the target to absorb the pole
    // shifts of remaining factors.
    let depth: i64 = slots
        .iter()
        .map(|s| if s.coeffs.is_empty() { 0 } else { -s.min_pow })
        .max()
        .unwrap_or(0)
        .max(0);
    let max_deg: i64 = f
        .terms()
        .map(|(m, _)| m.total_degree() as i64)
        .max()
        .unwrap_or(0);
    let pad = cutoff.map(|c| c + depth * max_deg);
    let mul = |a: &LaurentSeries, b: &LaurentSeries| -> LaurentSeries {
        match pad {
            Some(p) => a.mul_trunc(b, p),
            None => a.mul(b),
        }
    };
    let mut cache: Vec<Vec<LaurentSeries>> = slots
        .iter()
        .map(|s| vec![LaurentSeries::constant(&gv, Poly::one(&gv)), (*s).clone()])
        .collect();
    let mut acc = LaurentSeries::zero(&gv);
    for (m, c) in f.terms() {
        let mut term = LaurentSeries::constant(&gv, Poly::constant(&gv, c.clone()));
        for (slot, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while cache[slot].len() <= e as usize {
                let next = mul(cache[slot].last().unwrap(), &cache[slot][1]);
                cache[slot].push(next);
            }
            term = mul(&term, &cache[slot][e as usize]);
        }
        acc = acc.add(&term);
    }
    if let Some(c) = cutoff {
        acc.reliable = acc.reliable.min(c);
    }
    acc
}

/// A solution of the indicial equations.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialPoint {
    pub values: [BigRational; 4],
}

impl InitialPoint {
    pub fn is_origin(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn from_ints(q: i64, qq: i64, p: i64, pp: i64) -> Self {
        InitialPoint {
            values: [
                BigRational::from_integer(q.into()),
                BigRational::from_integer(qq.into()),
                BigRational::from_integer(p.into()),
                BigRational::from_integer(pp.into()),
            ],
        }
    }
}

/// The indicial equations: `mu_i x_i + F_i(x)` with the deformation part
/// dropped (it enters at subleading `t`-order).
pub fn indicial_equations(sys: &HamiltonianSystem) -> [Poly; 4] {
    let field = sys.vector_field();
    let names = ["q", "Q", "p", "P"];
    let mut out = Vec::new();
    for (i, f) in field.iter().enumerate() {
        let f_a_free = drop_a_terms(f);
        let eq = &f_a_free
            + &Poly::var(&sys.vars, names[i]).scale(&Scalar::from_int(LEADING_EXPONENTS[i]));
        out.push(eq);
    }
    out.try_into().unwrap()
}

fn drop_a_terms(f: &Poly) -> Poly {
    let mut out = Poly::zero(f.vars());
    for (m, c) in f.terms() {
        if m.0[DEF_A] == 0 {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Solves the indicial system exactly by triangular elimination (linear
/// substitutions, resultants and rational root extraction). Returns every
/// rational solution; a residual component without rational points is an
/// error listing the residual polynomial.
pub fn initial_locus(sys: &HamiltonianSystem) -> Result<Vec<InitialPoint>, Error> {
    let eqs = indicial_equations(sys);
    let vars = sys.vars.clone();
    let mut sols = solve_zero_dimensional(&vars, &eqs.to_vec(), &[0, 1, 2, 3])?;
    // verify by substitution
    for s in &sols {
        let assign: Vec<(usize, Scalar)> = (0..4)
            .map(|i| (i, Scalar::from_rational(s.values[i].clone())))
            .collect();
        for eq in &eqs {
            if !eq.specialize(&assign).is_zero() {
                return Err(Error::Internal("initial point fails verification".into()));
            }
        }
    }
    sols.sort_by(|a, b| a.values.partial_cmp(&b.values).unwrap());
    Ok(sols)
}

/// Back-substitution search over the listed variables.
fn solve_zero_dimensional(
    vars: &Arc<VarSet>,
    eqs: &Vec<Poly>,
    unknowns: &[usize],
) -> Result<Vec<InitialPoint>, Error> {
    let mut partial = vec![None::<BigRational>; vars.len()];
    let mut out = Vec::new();
    descend(vars, eqs, unknowns, &mut partial, &mut out)?;
    // dedupe
    let mut uniq: Vec<InitialPoint> = Vec::new();
    for s in out {
        if !uniq.contains(&s) {
            uniq.push(s);
        }
    }
    Ok(uniq)
}

fn descend(
    vars: &Arc<VarSet>,
    eqs: &[Poly],
    unknowns: &[usize],
    partial: &mut Vec<Option<BigRational>>,
    out: &mut Vec<InitialPoint>,
) -> Result<(), Error> {
    // substitute the fixed values
    let assign: Vec<(usize, Scalar)> = partial
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.as_ref().map(|q| (i, Scalar::from_rational(q.clone()))))
        .collect();
    let reduced: Vec<Poly> = eqs
        .iter()
        .map(|e| e.specialize(&assign))
        .filter(|e| !e.is_zero())
        .collect();
    let open: Vec<usize> = unknowns
        .iter()
        .copied()
        .filter(|&u| partial[u].is_none())
        .collect();
    if open.is_empty() {
        if reduced.is_empty() {
            // Variables substituted away at an outer level are still unset
            // here; the caller overwrites them before verification.
            let v = |i: usize| partial[i].clone().unwrap_or_else(BigRational::zero);
            out.push(InitialPoint {
                values: [v(0), v(1), v(2), v(3)],
            });
        }
        return Ok(());
    }
    if reduced.is_empty() {
        return Err(Error::NonRationalComponent(
            "positive-dimensional solution set".into(),
        ));
    }
    if open.len() == 1 {
        let v = open[0];
        // common rational roots of all equations: roots of their gcd
        let mut g = UniPoly::from_poly(&reduced[0], v);
        for e in &reduced[1..] {
            g = gcd_uni(&g, &UniPoly::from_poly(e, v));
        }
        if g.degree() <= 0 {
            return Ok(()); // inconsistent branch
        }
        let (roots, cofactor) = rational_roots(&g)?;
        if cofactor.degree() > 0 {
            return Err(Error::NonRationalComponent(cofactor.to_poly().to_text()));
        }
        for (r, _) in roots {
            partial[v] = Some(r);
            descend(vars, eqs, unknowns, partial, out)?;
            partial[v] = None;
        }
        return Ok(());
    }
    // Prefer an equation linear in some open variable with constant leading
    // coefficient: substitute it away.
    for &v in &open {
        for e in &reduced {
            let u = UniPoly::from_poly(e, v);
            if u.degree() == 1 && u.lc().is_constant() {
                // v = -c0 / c1
                let c1 = u.lc().constant_coeff();
                let rest = u.coeff(0);
                let replacement = rest.scale(&(-&c1.inv()));
                let substituted: Vec<Poly> = eqs
                    .iter()
                    .map(|f| f.substitute(v, &replacement))
                    .collect();
                // Solve the reduced system, then recover v.
                let remaining: Vec<usize> = unknowns.iter().copied().filter(|&u2| u2 != v).collect();
                let mut sub_out = Vec::new();
                let before = partial.clone();
                descend(vars, &substituted, &remaining, partial, &mut sub_out)?;
                *partial = before;
                for s in sub_out {
                    let assign: Vec<(usize, Scalar)> = (0..4)
                        .filter(|&i| i != v)
                        .map(|i| (i, Scalar::from_rational(s.values[i].clone())))
                        .collect();
                    let val = replacement.specialize(&assign);
                    if !val.is_constant() {
                        return Err(Error::Internal("unresolved substitution".into()));
                    }
                    let mut values = s.values.clone();
                    values[v] = val.constant_coeff().expect_rational().clone();
                    // verify against the untouched system
                    let full_assign: Vec<(usize, Scalar)> = (0..4)
                        .map(|i| (i, Scalar::from_rational(values[i].clone())))
                        .collect();
                    if eqs.iter().all(|e| e.specialize(&full_assign).is_zero()) {
                        out.push(InitialPoint { values });
                    }
                }
                return Ok(());
            }
        }
    }
    // Otherwise eliminate the first open variable by resultants against the
    // lowest-degree equation that contains it.
    let v = *open
        .iter()
        .min_by_key(|&&v| {
            reduced
                .iter()
                .map(|e| e.degree_in(v))
                .filter(|&d| d > 0)
                .min()
                .unwrap_or(i64::MAX)
        })
        .unwrap();
    let with_v: Vec<&Poly> = reduced.iter().filter(|e| e.degree_in(v) > 0).collect();
    let without_v: Vec<Poly> = reduced
        .iter()
        .filter(|e| e.degree_in(v) <= 0)
        .cloned()
        .collect();
    if with_v.is_empty() {
        return Err(Error::Internal("variable absent from all equations".into()));
    }
    let pivot = with_v
        .iter()
        .min_by_key(|e| e.degree_in(v))
        .copied()
        .unwrap();
    let mut eliminated = without_v;
    for e in &with_v {
        if std::ptr::eq(*e, pivot) {
            continue;
        }
        let r = resultant(pivot, e, v)?;
        if r.is_zero() {
            return Err(Error::EliminationOrderFailed);
        }
        eliminated.push(r);
    }
    if eliminated.is_empty() {
        return Err(Error::NonRationalComponent(
            "underdetermined after elimination".into(),
        ));
    }
    let remaining: Vec<usize> = unknowns.iter().copied().filter(|&u2| u2 != v).collect();
    let mut sub_out = Vec::new();
    let before = partial.clone();
    // Solve the eliminated system over the remaining unknowns with a free
    // placeholder for v, then extend each solution.
    descend(vars, &eliminated, &remaining, partial, &mut sub_out)?;
    *partial = before;
    for s in sub_out {
        let mut p2 = partial.clone();
        for &u2 in &remaining {
            p2[u2] = Some(s.values[u2].clone());
        }
        descend(vars, eqs, &[v], &mut p2, out)?;
    }
    Ok(())
}

/// Kovalevskaya matrix at an initial point: Jacobian of the weighted vector
/// field plus the diagonal of leading exponents.
pub fn kovalevskaya_matrix(sys: &HamiltonianSystem, point: &InitialPoint) -> Matrix {
    let field = sys.vector_field();
    let assign: Vec<(usize, Scalar)> = (0..4)
        .map(|i| (i, Scalar::from_rational(point.values[i].clone())))
        .chain(std::iter::once((DEF_A, Scalar::zero())))
        .collect();
    let mut k = Matrix::zero(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let d = field[i].derivative(j).specialize(&assign);
            assert!(d.is_constant());
            k[(i, j)] = d.constant_coeff();
        }
        k[(i, i)] = &k[(i, i)] + &Scalar::from_int(LEADING_EXPONENTS[i]);
    }
    k
}

/// Exponent data at an initial point.
#[derive(Clone, Debug)]
pub struct KovalevskayaData {
    pub matrix: Matrix,
    pub char_poly: Poly,
    /// Rational eigenvalues with multiplicity.
    pub exponents: Vec<(BigRational, u32)>,
    /// Factor of the characteristic polynomial without rational roots.
    pub unsolved: Option<Poly>,
}

impl KovalevskayaData {
    pub fn exponent_multiset(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        for (r, m) in &self.exponents {
            for _ in 0..*m {
                out.push(r.clone());
            }
        }
        out.sort();
        out
    }

    /// Positive integer exponents counted with multiplicity.
    pub fn positive_integer_count(&self) -> usize {
        self.exponents
            .iter()
            .filter(|(r, _)| r.is_integer() && *r > BigRational::zero())
            .map(|(_, m)| *m as usize)
            .sum()
    }
}

/// Characteristic polynomial and rational eigenvalues of the Kovalevskaya
/// matrix at `point`; `point` must be nonzero.
pub fn kovalevskaya_exponents(
    sys: &HamiltonianSystem,
    point: &InitialPoint,
) -> Result<KovalevskayaData, Error> {
    if point.is_origin() {
        return Err(Error::Internal(
            "Kovalevskaya data requires a nonzero initial point".into(),
        ));
    }
    let k = kovalevskaya_matrix(sys, point);
    let sv = VarSet::new(&["s"], &[1]);
    // char poly = det(s I - K) expanded by permutations (4x4)
    let mut det = Poly::zero(&sv);
    let idx = [0usize, 1, 2, 3];
    for perm in permutations(&idx) {
        let sign = permutation_sign(&perm);
        let mut term = Poly::one(&sv);
        for (i, &j) in perm.iter().enumerate() {
            let entry = if i == j {
                &Poly::var(&sv, "s") - &Poly::constant(&sv, k[(i, j)].clone())
            } else {
                Poly::constant(&sv, -&k[(i, j)])
            };
            term = &term * &entry;
        }
        det = if sign { &det - &term } else { &det + &term };
    }
    // integrality of the characteristic polynomial
    for (_, c) in det.terms() {
        let q = c.expect_rational();
        if !q.is_integer() {
            return Err(Error::Internal(
                "characteristic polynomial is not integral".into(),
            ));
        }
    }
    let u = UniPoly::from_poly(&det, 0);
    let (roots, cofactor) = rational_roots(&u)?;
    let unsolved = if cofactor.degree() > 0 {
        Some(cofactor.to_poly())
    } else {
        None
    };
    Ok(KovalevskayaData {
        matrix: k,
        char_poly: det,
        exponents: roots,
        unsolved,
    })
}

fn permutations(items: &[usize; 4]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v = items.to_vec();
    permute(&mut v, 0, &mut out);
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

fn permutation_sign(perm: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// The principal balance: initial point, the four series, truncation order.
#[derive(Clone)]
pub struct PrincipalBalance {
    pub point: InitialPoint,
    /// Series for `(q, Q, p, P)` over `Q[g1, g2, g3, a]`.
    pub series: [LaurentSeries; 4],
    pub order: i64,
}

impl PrincipalBalance {
    pub fn gamma_vars(&self) -> Arc<VarSet> {
        self.series[0].vars.clone()
    }
}

/// Normalization of the free parameters: at resonance `k` the kernel vector
/// is scaled so that component `component` equals `value`, and the parameter
/// `gamma` multiplies it.
struct ResonanceRule {
    order: i64,
    gamma: &'static str,
    component: usize,
    value: i64,
}

const RESONANCE_RULES: [ResonanceRule; 3] = [
    ResonanceRule {
        order: 1,
        gamma: "g1",
        component: 1,
        value: 4,
    },
    ResonanceRule {
        order: 4,
        gamma: "g2",
        component: 1,
        value: -1,
    },
    ResonanceRule {
        order: 6,
        gamma: "g3",
        component: 0,
        value: 1,
    },
];

/// Solve the principal balance at `point` through the given order. `point`
/// must carry exactly three positive integer exponents.
pub fn solve_balance(
    sys: &HamiltonianSystem,
    point: &InitialPoint,
    order: i64,
) -> Result<PrincipalBalance, Error> {
    let kdata = kovalevskaya_exponents(sys, point)?;
    if kdata.positive_integer_count() != 3 {
        return Err(Error::Internal(
            "not a principal balance: need three positive integer exponents".into(),
        ));
    }
    let gv = gamma_vars();
    let kmat = &kdata.matrix;
    let field = sys.vector_field();

    let mut series: [LaurentSeries; 4] = std::array::from_fn(|i| {
        let mut s = LaurentSeries::zero(&gv);
        s.set_coeff(
            -LEADING_EXPONENTS[i],
            Poly::constant(&gv, Scalar::from_rational(point.values[i].clone())),
        );
        s.reliable = -LEADING_EXPONENTS[i];
        s
    });

    for k in 1..=order {
        // rhs_i = [t^(k - mu_i - 1)] F_i(series so far). The truncated series
        // are read as exact polynomials in t here: contributions of the still
        // unknown order-k coefficients to this t-power are exactly the linear
        // Kovalevskaya terms, which sit on the left-hand side.
        let frozen: [LaurentSeries; 4] = std::array::from_fn(|i| {
            let mut s = series[i].clone();
            s.reliable = FULLY_RELIABLE;
            s
        });
        let mut rhs = Vec::with_capacity(4);
        for i in 0..4 {
            let want = k - LEADING_EXPONENTS[i] - 1;
            let f_val = poly_on_series_trunc(&field[i], &frozen, want);
            rhs.push(f_val.coeff(want));
        }
        // (k I - K) c = rhs
        let mut m = Matrix::zero(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = -kmat[(i, j)].clone();
            }
            m[(i, i)] = &m[(i, i)] + &Scalar::from_int(k);
        }
        let solved = solve_with_poly_rhs(&m, &rhs).ok_or(Error::BalanceObstructed(k))?;
        let (mut coeffs, kernel) = solved;
        if let Some(rule) = RESONANCE_RULES.iter().find(|r| r.order == k) {
            let kernel = kernel.ok_or(Error::BalanceObstructed(k))?;
            // scale so component `rule.component` equals rule.value * gamma
            let pivot = &kernel[rule.component];
            if pivot.is_zero() {
                return Err(Error::Internal(
                    "resonance kernel misses the normalization component".into(),
                ));
            }
            let scale = &Scalar::from_int(rule.value) * &pivot.inv();
            let gamma = Poly::var(&gv, rule.gamma);
            for (i, kv) in kernel.iter().enumerate() {
                let add = gamma.scale(&(kv * &scale));
                coeffs[i] = &coeffs[i] + &add;
            }
        }
        for i in 0..4 {
            let pow = k - LEADING_EXPONENTS[i];
            series[i].set_coeff(pow, coeffs[i].clone());
            series[i].reliable = pow;
        }
    }
    Ok(PrincipalBalance {
        point: point.clone(),
        series,
        order,
    })
}

/// Solve `M x = rhs` with rational `M` and polynomial right-hand side.
/// Free variables are set to zero. Returns the solution and, when `M` is
/// singular, one kernel vector (`None` for regular `M`). Returns `None` when
/// the system is inconsistent.
fn solve_with_poly_rhs(m: &Matrix, rhs: &[Poly]) -> Option<(Vec<Poly>, Option<Vec<Scalar>>)> {
    let n = m.rows;
    let vars = rhs[0].vars().clone();
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].clone()).collect())
        .collect();
    let mut b: Vec<Poly> = rhs.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].inv();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        b[row] = b[row].scale(&inv);
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let d = &f * &a[row][j];
                    a[i][j] = &a[i][j] - &d;
                }
                let d = b[row].scale(&f);
                b[i] = &b[i] - &d;
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    // consistency of zero rows
    for i in row..n {
        if !b[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![Poly::zero(&vars); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = b[r].clone();
    }
    let kernel = if pivot_cols.len() < n {
        let free = (0..n).find(|c| !pivot_cols.contains(c)).unwrap();
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for (r, &c) in pivot_cols.iter().enumerate() {
            v[c] = -&a[r][free];
        }
        Some(v)
    } else {
        None
    };
    Some((x, kernel))
}

/// Residual of the equations of motion after substituting the balance:
/// must vanish on the whole certified window.
pub fn balance_residual_ok(sys: &HamiltonianSystem, balance: &PrincipalBalance) -> bool {
    let field = sys.vector_field();
    for i in 0..4 {
        let lhs = balance.series[i].d_dt();
        let rhs = poly_on_series(&field[i], &balance.series);
        let window = lhs.reliable.min(rhs.reliable);
        for pow in (lhs.min_pow.min(rhs.min_pow))..=window {
            if lhs.coeff_unchecked(pow) != rhs.coeff_unchecked(pow) {
                return false;
            }
        }
    }
    true
}

/// Equivariance of the balance under the order-6 symmetry at `a = 0`:
/// substituting `t -> rho^5 t`, `g1 -> rho g1`, `g2 -> rho^4 g2`, `g3 -> g3`
/// multiplies the series for `(q, Q, p, P)` by `rho^(2, 2, 3, 3)`.
pub fn balance_equivariant_at_a0(balance: &PrincipalBalance) -> bool {
    let phases = [2i64, 2, 3, 3];
    let gv = balance.gamma_vars();
    let g_phase = [1i64, 4, 0]; // phases of g1, g2, g3
    for (i, s) in balance.series.iter().enumerate() {
        for (idx, c) in s.coeffs.iter().enumerate() {
            let pow = s.min_pow + idx as i64;
            if pow > s.reliable {
                break;
            }
            for (m, coeff) in c.terms() {
                if m.0[3] != 0 {
                    continue; // a-terms are outside the symmetric locus
                }
                let mut phase = 5 * pow;
                for (g, &e) in m.0.iter().take(3).enumerate() {
                    phase += g_phase[g] * e as i64;
                }
                let lhs = coeff * &Scalar::rho_pow(phase);
                let rhs = coeff * &Scalar::rho_pow(phases[i]);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    let _ = gv;
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys() -> HamiltonianSystem {
        HamiltonianSystem::dgr()
    }

    #[test]
    fn initial_locus_has_three_points_and_origin() {
        let s = sys();
        let locus = initial_locus(&s).unwrap();
        assert_eq!(locus.len(), 4);
        assert!(locus.iter().any(|p| p.is_origin()));
        assert!(locus.contains(&InitialPoint::from_ints(-4, 4, 8, 24)));
        assert!(locus.contains(&InitialPoint::from_ints(-18, -24, 36, -144)));
        assert!(locus.contains(&InitialPoint::from_ints(-2, 0, 4, 0)));
    }

    #[test]
    fn exponents_match_for_all_three_points() {
        let s = sys();
        let cases = [
            (InitialPoint::from_ints(-4, 4, 8, 24), vec![-2i64, -1, 6, 7]),
            (
                InitialPoint::from_ints(-18, -24, 36, -144),
                vec![-7, -1, 6, 12],
            ),
            (InitialPoint::from_ints(-2, 0, 4, 0), vec![-1, 1, 4, 6]),
        ];
        for (pt, expect) in cases {
            let k = kovalevskaya_exponents(&s, &pt).unwrap();
            assert!(k.unsolved.is_none());
            let got = k.exponent_multiset();
            let want: Vec<BigRational> = expect
                .iter()
                .map(|&n| BigRational::from_integer(n.into()))
                .collect();
            assert_eq!(got, want);
            // -1 is always an exponent; the sum equals the trace (10)
            assert!(got.contains(&BigRational::from_integer((-1).into())));
            let sum: BigRational = got.iter().cloned().sum();
            assert_eq!(sum, BigRational::from_integer(10.into()));
        }
    }

    #[test]
    fn principal_balance_series_match_displays() {
        let s = sys();
        let pt = InitialPoint::from_ints(-2, 0, 4, 0);
        let b = solve_balance(&s, &pt, 10).unwrap();
        let gv = b.gamma_vars();
        let q = &b.series[0];
        let qq = &b.series[1];
        let p = &b.series[2];
        let pp = &b.series[3];
        let pp_of = |t: &str| parse_poly(&gv, t).unwrap();
        // q(t) = -2/t^2 - 2 g1^2 + 4 g1^3 t - (6 g1^4 - a/10) t^2 + 2 g1 g2 t^3 + g3 t^4
        assert_eq!(q.coeff(-2), pp_of("-2"));
        assert_eq!(q.coeff(-1), pp_of("0"));
        assert_eq!(q.coeff(0), pp_of("-2*g1^2"));
        assert_eq!(q.coeff(1), pp_of("4*g1^3"));
        assert_eq!(q.coeff(2), pp_of("-6*g1^4 + 1/10*a"));
        assert_eq!(q.coeff(3), pp_of("2*g1*g2"));
        assert_eq!(q.coeff(4), pp_of("g3"));
        // Q(t) = 4 g1/t - 4 g1^2 + 4 g1^3 t - g2 t^2 + (8 g1^5 - g1 a/10 - g1 g2) t^3 - g1^2 g2 t^4
        assert_eq!(qq.coeff(-1), pp_of("4*g1"));
        assert_eq!(qq.coeff(0), pp_of("-4*g1^2"));
        assert_eq!(qq.coeff(1), pp_of("4*g1^3"));
        assert_eq!(qq.coeff(2), pp_of("-g2"));
        assert_eq!(qq.coeff(3), pp_of("8*g1^5 - 1/10*g1*a - g1*g2"));
        assert_eq!(qq.coeff(4), pp_of("-g1^2*g2"));
        // p(t) = 4/t^3 + 4 g1^3 - (12 g1^4 - a/5) t + 6 g1 g2 t^2 + 4 g3 t^3
        assert_eq!(p.coeff(-3), pp_of("4"));
        assert_eq!(p.coeff(0), pp_of("4*g1^3"));
        assert_eq!(p.coeff(1), pp_of("-12*g1^4 + 1/5*a"));
        assert_eq!(p.coeff(2), pp_of("6*g1*g2"));
        assert_eq!(p.coeff(3), pp_of("4*g3"));
        // P(t) = 12 g1/t^2 - 12 g1^3 + 6 g2 t + (-72 g1^5 + 9 g1 a/10 + 9 g1 g2) t^2 + 12 g1^2 g2 t^3
        assert_eq!(pp.coeff(-2), pp_of("12*g1"));
        assert_eq!(pp.coeff(-1), pp_of("0"));
        assert_eq!(pp.coeff(0), pp_of("-12*g1^3"));
        assert_eq!(pp.coeff(1), pp_of("6*g2"));
        assert_eq!(pp.coeff(2), pp_of("-72*g1^5 + 9/10*g1*a + 9*g1*g2"));
        assert_eq!(pp.coeff(3), pp_of("12*g1^2*g2"));
    }

    #[test]
    fn residual_vanishes_and_series_equivariant() {
        let s = sys();
        let pt = InitialPoint::from_ints(-2, 0, 4, 0);
        let b = solve_balance(&s, &pt, 14).unwrap();
        assert!(balance_residual_ok(&s, &b));
        assert!(balance_equivariant_at_a0(&b));
    }

    #[test]
    fn truncation_consistency() {
        let s = sys();
        let pt = InitialPoint::from_ints(-2, 0, 4, 0);
        let b8 = solve_balance(&s, &pt, 8).unwrap();
        let b12 = solve_balance(&s, &pt, 12).unwrap();
        for i in 0..4 {
            for pow in b8.series[i].min_pow..=b8.series[i].reliable {
                assert_eq!(b8.series[i].coeff(pow), b12.series[i].coeff(pow));
            }
        }
    }

    #[test]
    fn non_principal_points_are_rejected() {
        let s = sys();
        let pt = InitialPoint::from_ints(-4, 4, 8, 24);
        assert!(solve_balance(&s, &pt, 6).is_err());
    }
}
