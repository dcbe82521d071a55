//! The Painlevé curve: extraction of the plane model from the principal
//! balance, genus computations for the enclosing curve family via
//! Riemann-Hurwitz with certified ramification profiles, the sixfold cyclic
//! cover, elliptic quotients in Weierstrass form, and j-invariants of binary
//! quartics.

use crate::balance::{poly_on_series, PrincipalBalance};
use crate::error::Error;
use crate::mechanics::HamiltonianSystem;
use crate::poly::{parse_poly, Mono, Poly, VarSet};
use crate::scalar::Scalar;
use crate::upoly::{resultant, squarefree_decomposition, SquarefreeFactor, UniPoly};
use num::rational::BigRational;
use std::sync::Arc;

/// Variables of the DGR plane-model family: curve coordinates `(x, y)` and
/// the fibre parameters.
pub fn curve_vars() -> Arc<VarSet> {
    VarSet::new(&["x", "y", "h", "g", "a"], &[1, 4, 6, 12, 4])
}

/// Variables of the general order-6 invariant family
/// `(y + alpha x^4)(y + beta x^4)(y + gamma x^4) + delta x^2 y + eps x^6 + zeta`.
pub fn family_vars() -> Arc<VarSet> {
    VarSet::new(
        &["x", "y", "alpha", "beta", "gamma", "delta", "eps", "zeta"],
        &[1, 4, 0, 0, 0, 6, 6, 12],
    )
}

/// A plane curve family: bivariate in `(x, y)` with polynomial parameters.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub poly: Poly,
    pub x: usize,
    pub y: usize,
}

impl CurveFamily {
    /// The general six-parameter family.
    pub fn general() -> Self {
        let v = family_vars();
        let y = Poly::var(&v, "y");
        let x4 = Poly::var_pow(&v, "x", 4);
        let f = &(&(&y + &(&x4 * &Poly::var(&v, "alpha")))
            * &(&y + &(&x4 * &Poly::var(&v, "beta"))))
            * &(&y + &(&x4 * &Poly::var(&v, "gamma")));
        let f = &f
            + &(&(&Poly::var(&v, "delta") * &Poly::var_pow(&v, "x", 2)) * &y);
        let f = &f + &(&Poly::var(&v, "eps") * &Poly::var_pow(&v, "x", 6));
        let f = &f + &Poly::var(&v, "zeta");
        CurveFamily {
            poly: f,
            x: 0,
            y: 1,
        }
    }

    /// Substitute parameter values/identifications, e.g. `gamma -> beta`.
    pub fn substitute_params(&self, subs: &[(&str, Poly)]) -> Self {
        let mut f = self.poly.clone();
        for (name, val) in subs {
            let idx = f.vars().index_of(name).expect("unknown parameter");
            f = f.substitute(idx, val);
        }
        CurveFamily {
            poly: f,
            x: self.x,
            y: self.y,
        }
    }
}

/// Values of `H` and `G` on the balance, as polynomials in the balance
/// parameters; the substitution must be `t`-free through the certified
/// window.
pub fn invariants_on_balance(
    sys: &HamiltonianSystem,
    balance: &PrincipalBalance,
) -> Result<(Poly, Poly), Error> {
    if balance.order < 14 {
        return Err(Error::TruncationInsufficient(14));
    }
    let mut out = Vec::new();
    for f in [&sys.h, &sys.g] {
        let s = poly_on_series(f, &balance.series);
        for (i, c) in s.coeffs.iter().enumerate() {
            let pow = s.min_pow + i as i64;
            if pow > s.reliable {
                break;
            }
            if pow != 0 && !c.is_zero() {
                return Err(Error::Internal(format!(
                    "balance substitution not conserved: t^{pow} coefficient {c}"
                )));
            }
        }
        out.push(s.coeff(0));
    }
    Ok((out.remove(0), out.remove(0)))
}

/// Plane model of the Painlevé divisor: eliminate `g3` through the linear
/// `h`-relation, substitute `x^2 = 6 g1^2`, `y = 9 g2`, and normalize so the
/// curve is monic in `y`.
pub fn painleve_plane_model(
    sys: &HamiltonianSystem,
    balance: &PrincipalBalance,
) -> Result<CurveFamily, Error> {
    let (h_gamma, g_gamma) = invariants_on_balance(sys, balance)?;
    let gv = balance.gamma_vars();
    let cv = curve_vars();
    let g3 = gv.index_of("g3").unwrap();
    // h relation must be linear in g3 with constant coefficient
    let hu = UniPoly::from_poly(&h_gamma, g3);
    if hu.degree() != 1 || !hu.lc().is_constant() {
        return Err(Error::Internal("h relation is not linear in g3".into()));
    }
    let lc = hu.lc().constant_coeff();
    // g3 = (h - rest)/lc, with h realized as a fresh variable carried through
    // the curve variable set. Work over (g1, g2, h, g, a).
    let work = VarSet::new(&["g1", "g2", "h", "g", "a"], &[1, 4, 6, 12, 4]);
    let to_work = |p: &Poly| -> Poly {
        // g-vars order: g1 g2 g3 a; g3 must be absent
        let mut out = Poly::zero(&work);
        for (m, c) in p.terms() {
            assert_eq!(m.0[2], 0, "g3 must be eliminated before mapping");
            out.add_term(Mono(vec![m.0[0], m.0[1], 0, 0, m.0[3]]), c.clone());
        }
        out
    };
    let rest = hu.coeff(0);
    let g3_value = &Poly::var(&work, "h") - &to_work(&rest);
    let g3_value = g3_value.scale(&lc.inv());
    let g_in_work = {
        let gu = UniPoly::from_poly(&g_gamma, g3);
        let mut acc = Poly::zero(&work);
        let mut pow = Poly::one(&work);
        for i in 0..=gu.degree() as usize {
            acc = &acc + &(&to_work(&gu.coeff(i)) * &pow);
            pow = &pow * &g3_value;
        }
        acc
    };
    let curve_in_work = &g_in_work - &Poly::var(&work, "g");
    // map g1^(2k) -> x^(2k)/6^k, g2^j -> (y/9)^j
    let mut curve = Poly::zero(&cv);
    for (m, c) in curve_in_work.terms() {
        let e1 = m.0[0];
        if e1 % 2 != 0 {
            return Err(Error::Internal(
                "odd power of g1 in the plane model".into(),
            ));
        }
        let k = (e1 / 2) as u32;
        let j = m.0[1] as u32;
        let coeff = c
            * &Scalar::from_frac(1, 6).pow(k)
            * &Scalar::from_frac(1, 9).pow(j);
        curve.add_term(Mono(vec![e1, m.0[1], m.0[2], m.0[3], m.0[4]]), coeff);
    }
    // normalize monic in y^3
    let y3 = Mono(vec![0, 3, 0, 0, 0]);
    let lead = curve.coeff(&y3);
    if lead.is_zero() {
        return Err(Error::Internal("plane model is not cubic in y".into()));
    }
    Ok(CurveFamily {
        poly: curve.scale(&lead.inv()),
        x: 0,
        y: 1,
    })
}

/// Parameter readoff identifying the Painlevé model inside the general
/// family: returns the values of `(alpha..zeta)` in `Q[h, g, a]`-form over
/// the curve variable set, or an error when the model does not embed.
pub fn family_readoff(curve: &CurveFamily) -> Result<Vec<Poly>, Error> {
    let cv = curve.poly.vars().clone();
    // Match coefficients of y^2 x^4 (el. symmetric), x^8 y, x^12, x^2 y, x^6, 1
    let coeff_of = |i: u16, j: u16| -> Poly {
        let mut acc = Poly::zero(&cv);
        for (m, c) in curve.poly.terms() {
            if m.0[curve.x] == i && m.0[curve.y] == j {
                let mut m2 = m.clone();
                m2.0[curve.x] = 0;
                m2.0[curve.y] = 0;
                acc.add_term(m2, c.clone());
            }
        }
        acc
    };
    // e1 = alpha+beta+gamma from x^4 y^2, e2 from x^8 y minus delta-part, etc.
    // For the undeformed model the elementary symmetric functions are
    // rational numbers; solve the cubic by rational roots.
    let e1 = coeff_of(4, 2);
    let e2 = coeff_of(8, 1);
    let e3_plus = coeff_of(12, 0);
    let delta = coeff_of(2, 1);
    let eps = coeff_of(6, 0);
    let zeta = coeff_of(0, 0);
    if !(e1.is_constant() && e2.is_constant() && e3_plus.is_constant()) {
        return Err(Error::Internal(
            "readoff requires numeric symmetric functions".into(),
        ));
    }
    // roots of t^3 - e1 t^2 + e2 t - e3
    let sv = VarSet::new(&["t"], &[1]);
    let cubic = parse_poly(&sv, "t^3").unwrap();
    let cubic = &cubic - &Poly::var_pow(&sv, "t", 2).scale(&e1.constant_coeff());
    let cubic = &cubic + &Poly::var(&sv, "t").scale(&e2.constant_coeff());
    let cubic = &cubic - &Poly::constant(&sv, e3_plus.constant_coeff());
    let (roots, cof) = crate::upoly::rational_roots(&UniPoly::from_poly(&cubic, 0))?;
    if cof.degree() > 0 {
        return Err(Error::NonRationalComponent(cof.to_poly().to_text()));
    }
    let mut abc: Vec<BigRational> = Vec::new();
    for (r, m) in roots {
        for _ in 0..m {
            abc.push(r.clone());
        }
    }
    if abc.len() != 3 {
        return Err(Error::Internal("readoff cubic must have three roots".into()));
    }
    // order as (alpha, beta, gamma) with the repeated root last (beta = gamma)
    abc.sort_by(|p, q| q.cmp(p));
    if abc[0] == abc[1] {
        abc.swap(0, 2);
    }
    let mut out: Vec<Poly> = abc
        .into_iter()
        .map(|r| Poly::constant(&cv, Scalar::from_rational(r)))
        .collect();
    out.push(delta);
    out.push(eps);
    out.push(zeta);
    Ok(out)
}

/// Ramification certificate for a 3:1 projection to the x-line.
#[derive(Clone, Debug)]
pub struct GenusCertificate {
    /// Degree in `x` of the content-stripped resultant.
    pub resultant_degree: i64,
    /// `(factor degree in x, multiplicity)` of the squarefree decomposition.
    pub profile: Vec<(i64, u32)>,
    /// Total finite ramification contribution.
    pub finite_contribution: i64,
    /// Number of (unramified) points over `x = infinity`.
    pub points_at_infinity: i64,
    /// Nonvanishing requirements that certify the profile.
    pub genericity: Vec<String>,
    pub genus: i64,
}

/// Whether double resultant roots are accepted as ramification contribution 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MultiplicityRule {
    SimpleOnly,
    /// Only sound on the certified stratum `3 zeta (alpha - beta) = delta^2`,
    /// where the colliding pairs each contribute 2.
    PairedDouble,
}

/// Genus of a curve in the family via Riemann-Hurwitz for the 3:1 cover of
/// the x-line: `2 - 2g = 6 - R`.
pub fn genus_simple_ramification(
    curve: &CurveFamily,
    rule: MultiplicityRule,
) -> Result<GenusCertificate, Error> {
    let f = &curve.poly;
    let vars = f.vars().clone();
    if f.degree_in(curve.y) != 3 {
        return Err(Error::Internal("curve must be cubic in y".into()));
    }
    let fy = f.derivative(curve.y);
    let r = resultant(f, &fy, curve.y)?;
    if r.is_zero() {
        return Err(Error::ReducibleOnStratum);
    }
    let mut genericity = Vec::new();
    let ru = UniPoly::from_poly(&r, curve.x).primitive();
    let rdeg = ru.degree();
    if ru.coeff(0).is_zero() {
        // a branch x-value at the origin needs a separate local analysis
        return Err(Error::AmbiguousRamification);
    }
    genericity.push(format!("resultant(0) = {}", ru.coeff(0)));
    // The resultant of an order-6 invariant curve is a polynomial in x^6;
    // reduce by the exponent gcd so the remainder chains stay short. Nonzero
    // roots of the reduced polynomial lift to `step` distinct x-values of the
    // same multiplicity.
    let step = ru
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .fold(0usize, gcd_usize)
        .max(1);
    let reduced = UniPoly {
        vars: ru.vars.clone(),
        main: ru.main,
        coeffs: ru.coeffs.iter().step_by(step).cloned().collect(),
    };
    let dec = crate::upoly::multiplicity_profile(&reduced)?;
    let mut profile = Vec::new();
    let mut finite = 0i64;
    for &(deg, multiplicity) in &dec {
        let x_roots = step as i64 * deg;
        profile.push((x_roots, multiplicity));
        match multiplicity {
            1 => finite += x_roots,
            2 if rule == MultiplicityRule::PairedDouble => {
                finite += 2 * x_roots;
            }
            _ => return Err(Error::AmbiguousRamification),
        }
    }
    // squarefree certificate: the product of distinct factors must really be
    // squarefree over the parameter field, i.e. gcd with derivative trivial;
    // squarefree_decomposition guarantees it, record the leading coefficient
    // as the genericity witness.
    genericity.push(format!("lc_x(resultant) = {}", ru.lc()));
    let infinity = infinity_points(curve, &mut genericity)?;
    if infinity.ramified {
        return Err(Error::AmbiguousRamification);
    }
    let chi = 6 - finite;
    let genus = (2 - chi) / 2;
    Ok(GenusCertificate {
        resultant_degree: rdeg,
        profile,
        finite_contribution: finite,
        points_at_infinity: infinity.count,
        genericity,
        genus,
    })
}

struct InfinityData {
    count: i64,
    ramified: bool,
}

/// Analyze the three sheets over `x = infinity` via the top Newton edge
/// `i + 4j = 12` (chart `x = 1/u`, `y = v/u^4`).
fn infinity_points(curve: &CurveFamily, genericity: &mut Vec<String>) -> Result<InfinityData, Error> {
    let f = &curve.poly;
    let vars = f.vars().clone();
    // G(u, v) = u^12 f(1/u, v/u^4): exponent of u = 12 - i - 4j >= 0
    let vv = VarSet::new(&["u", "v"], &[1, 1]);
    // carry parameters: build over the joined set (u, v, params...)
    let mut names: Vec<&str> = vec!["u", "v"];
    let mut weights: Vec<i64> = vec![1, 1];
    for (i, n) in vars.names().iter().enumerate() {
        if i != curve.x && i != curve.y {
            names.push(n);
            weights.push(0);
        }
    }
    let uvw = VarSet::new(&names, &weights);
    let mut g = Poly::zero(&uvw);
    for (m, c) in f.terms() {
        let i = m.0[curve.x] as i64;
        let j = m.0[curve.y] as i64;
        let ue = 12 - i - 4 * j;
        if ue < 0 {
            return Err(Error::Internal("Newton polygon exceeds the x^12 hull".into()));
        }
        let mut exps = vec![ue as u16, j as u16];
        for (k, &e) in m.0.iter().enumerate() {
            if k != curve.x && k != curve.y {
                exps.push(e);
            }
        }
        g.add_term(Mono(exps), c.clone());
    }
    let _ = vv;
    // Psi(v) = G(0, v)
    let psi = g.specialize(&[(0, Scalar::zero())]);
    let psi_u = UniPoly::from_poly(&psi, 1);
    if psi_u.degree() != 3 {
        return Err(Error::AmbiguousRamification);
    }
    let dec = squarefree_decomposition(&psi_u)?;
    let mut count = 0i64;
    for SquarefreeFactor {
        factor,
        multiplicity,
    } in &dec
    {
        match multiplicity {
            1 => {
                count += factor.degree();
                genericity.push(format!(
                    "simple sheet separation at infinity: {}",
                    factor.to_poly()
                ));
            }
            2 => {
                if factor.degree() != 1 {
                    return Err(Error::AmbiguousRamification);
                }
                // local analysis at the double root: branches of
                // c w^2 + N(u) + M(u) w with N = G(u, v0), M = dG/dv (u, v0)
                let reduce = |p: &Poly| -> UniPoly {
                    // remainder of p (as v-polynomial) modulo the linear factor
                    let pu = UniPoly::from_poly(p, 1);
                    pu.pseudo_rem(&factor.clone())
                };
                let n_of_u = reduce(&g);
                let m_of_u = reduce(&g.derivative(1));
                let n_uni = UniPoly::from_poly(&n_of_u.to_poly(), 0);
                let m_uni = UniPoly::from_poly(&m_of_u.to_poly(), 0);
                let s = (0..).find(|&i| !n_uni.coeff(i).is_zero());
                let s_prime = (0..).find(|&i| !m_uni.coeff(i).is_zero());
                match (s, s_prime) {
                    (Some(s), sp) => {
                        let twice_sp = sp.map(|x| 2 * x).unwrap_or(usize::MAX);
                        if s < twice_sp {
                            if s % 2 == 0 {
                                count += 2;
                                genericity.push(format!(
                                    "two-branch separation at infinity, order u^{s}"
                                ));
                            } else {
                                return Ok(InfinityData {
                                    count: count + 1,
                                    ramified: true,
                                });
                            }
                        } else if s == twice_sp {
                            // w = r u^sp with c r^2 + M_sp r + N_s = 0
                            let c2 = {
                                // w^2-coefficient of G at v0: (1/2) d2G/dv2 mod factor
                                let half = Scalar::from_frac(1, 2);
                                let d2 = g.derivative(1).derivative(1).scale(&half);
                                reduce(&d2).to_poly()
                            };
                            let disc = {
                                let m_c = m_uni.coeff(sp.unwrap());
                                let n_c = n_uni.coeff(s);
                                &(&m_c * &m_c) - &(&c2 * &n_c).scale(&Scalar::from_int(4))
                            };
                            if disc.is_zero() {
                                return Err(Error::AmbiguousRamification);
                            }
                            genericity.push(format!("branch quadratic discriminant {disc}"));
                            count += 2;
                        } else {
                            return Err(Error::AmbiguousRamification);
                        }
                    }
                    (None, _) => return Err(Error::AmbiguousRamification),
                }
            }
            _ => return Err(Error::AmbiguousRamification),
        }
    }
    Ok(InfinityData {
        count,
        ramified: false,
    })
}

/// Genus of the sixfold cyclic cover `xi^6 + zc l^3 + dc l^2 + ec l = 0` of
/// the `l`-line, from the root multiplicities of the cubic and the behaviour
/// over infinity. Degenerations return the dropped genus of one component.
pub fn cyclic_cover_genus(zc: &Poly, dc: &Poly, ec: &Poly) -> Result<i64, Error> {
    let vars = zc.vars().clone();
    let lset = {
        let mut names: Vec<&str> = vec!["l"];
        let mut weights = vec![1i64];
        for n in vars.names() {
            names.push(n);
            weights.push(0);
        }
        VarSet::new(&names, &weights)
    };
    let embed = |p: &Poly| -> Poly {
        let mapping: Vec<usize> = (0..vars.len()).map(|i| i + 1).collect();
        p.embed(&lset, &mapping)
    };
    let l = Poly::var(&lset, "l");
    let cubic = &(&(&embed(zc) * &l.pow(3)) + &(&embed(dc) * &l.pow(2))) + &(&embed(ec) * &l);
    if cubic.is_zero() {
        return Err(Error::ZeroInput);
    }
    let cu = UniPoly::from_poly(&cubic, 0);
    let d_total = cu.degree();
    let dec = squarefree_decomposition(&cu)?;
    // component count of xi^6 = c(l): the gcd of all multiplicities with 6
    let mut mult_gcd: u32 = 0;
    for f in &dec {
        mult_gcd = gcd_u32(mult_gcd, f.multiplicity);
    }
    let m_total = gcd_u32(6, mult_gcd.max(1));
    let n = (6 / m_total) as i64;
    if n == 1 {
        return Ok(0);
    }
    let mut chi = 2 * n;
    for f in &dec {
        let m = (f.multiplicity / m_total) as i64;
        chi -= f.factor.degree() * (n - gcd_i64(n, m));
    }
    let d_reduced = d_total / m_total as i64;
    chi -= n - gcd_i64(n, d_reduced);
    Ok((2 - chi) / 2)
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// Weierstrass data `y^2 = x^3 + A x^2 + B x + C` with the j-invariant as a
/// fraction of polynomials in the parameters.
#[derive(Clone, Debug)]
pub struct EllipticModel {
    pub a2: Poly,
    pub a4: Poly,
    pub a6: Poly,
    pub j_num: Poly,
    pub j_den: Poly,
}

impl EllipticModel {
    fn from_monic_cubic(a2: Poly, a4: Poly, a6: Poly) -> Result<Self, Error> {
        let vars = a2.vars().clone();
        let c16 = Scalar::from_int(16);
        let c4 = (&(&a2 * &a2) - &a4.scale(&Scalar::from_int(3))).scale(&c16);
        let c6 = {
            let t = &(&(&a2 * &a2) * &a2).scale(&Scalar::from_int(-2))
                + &(&a2 * &a4).scale(&Scalar::from_int(9));
            (&t - &a6.scale(&Scalar::from_int(27))).scale(&Scalar::from_int(32))
        };
        // 1728 disc = c4^3 - c6^2
        let disc_1728 = &(&(&c4 * &c4) * &c4) - &(&c6 * &c6);
        if disc_1728.is_zero() {
            return Err(Error::DegenerateConfiguration);
        }
        let j_num = (&(&c4 * &c4) * &c4).scale(&Scalar::from_int(1728));
        let j_den = disc_1728;
        let _ = vars;
        Ok(EllipticModel {
            a2,
            a4,
            a6,
            j_num,
            j_den,
        })
    }

    /// From `mu^2 = c3 l^3 + c2 l^2 + c1 l + c0` (not necessarily monic).
    pub fn from_cubic(c3: &Poly, c2: &Poly, c1: &Poly, c0: &Poly) -> Result<Self, Error> {
        if c3.is_zero() {
            return Err(Error::DegenerateConfiguration);
        }
        // T = c3 l, Y = c3 mu: Y^2 = T^3 + c2 T^2 + c1 c3 T + c0 c3^2
        EllipticModel::from_monic_cubic(c2.clone(), c1 * c3, &(c0 * c3) * c3)
    }

    /// j as a reduced statement: cross-multiplied equality against a target.
    pub fn j_equals(&self, num: &Poly, den: &Poly) -> bool {
        &(&self.j_num * den) - &(num * &self.j_den) == Poly::zero(self.j_num.vars())
    }
}

/// Invariants of the binary quartic `a X^4 + b X^3 Y + c X^2 Y^2 + d X Y^3 + e Y^4`.
pub fn quartic_invariants(co: &[Poly; 5]) -> (Poly, Poly) {
    let [a, b, c, d, e] = co;
    let i2 = &(&(a * e).scale(&Scalar::from_int(12)) - &(b * d).scale(&Scalar::from_int(3)))
        + &(c * c);
    let j3 = {
        let t1 = (&(a * c) * e).scale(&Scalar::from_int(72));
        let t2 = (&(b * c) * d).scale(&Scalar::from_int(9));
        let t3 = (&(a * d) * d).scale(&Scalar::from_int(27));
        let t4 = (&(b * b) * e).scale(&Scalar::from_int(27));
        let t5 = (&(c * c) * c).scale(&Scalar::from_int(2));
        &(&(&(&t1 + &t2) - &t3) - &t4) - &t5
    };
    (i2, j3)
}

/// j-invariant of a binary quartic with four distinct roots, normalized so
/// the harmonic configuration gives 1728 and the equianharmonic one gives 0:
/// `j = 6912 I^3 / (4 I^3 - J^2)`.
pub fn j_invariant_quartic(co: &[Poly; 5]) -> Result<(Poly, Poly), Error> {
    let (i2, j3) = quartic_invariants(co);
    let i3 = &(&i2 * &i2) * &i2;
    let den = &i3.scale(&Scalar::from_int(4)) - &(&j3 * &j3);
    if den.is_zero() {
        return Err(Error::DegenerateConfiguration);
    }
    Ok((i3.scale(&Scalar::from_int(6912)), den))
}

/// Elliptic quotient of the degenerate family member with `beta = gamma`,
/// `eps = beta delta`: derives the order-3 quotient model
/// `mu^2 + zeta l^3 + delta l^2 + (alpha - beta) l = 0` through the invariant
/// monomials `s = x^3`, `t = x^2 y`, verifies the rewriting identity, and
/// returns the Weierstrass form.
pub fn elliptic_quotient_family(
    alpha: &Poly,
    beta: &Poly,
    delta: &Poly,
    zeta: &Poly,
) -> Result<EllipticModel, Error> {
    let vars = alpha.vars().clone();
    let joined = {
        let mut names: Vec<&str> = vec!["x", "y"];
        let mut weights = vec![1i64, 4];
        for (n, w) in vars.names().iter().zip(vars.weights()) {
            names.push(n);
            weights.push(*w);
        }
        VarSet::new(&names, &weights)
    };
    let lift_xy = |p: &Poly| -> Poly {
        let mapping: Vec<usize> = (0..vars.len()).map(|i| i + 2).collect();
        p.embed(&joined, &mapping)
    };
    let (la, lb, ld, lz) = (lift_xy(alpha), lift_xy(beta), lift_xy(delta), lift_xy(zeta));
    let y = Poly::var(&joined, "y");
    let x4 = Poly::var_pow(&joined, "x", 4);
    // F on the stratum beta = gamma, eps = beta delta
    let f = {
        let f1 = &y + &(&x4 * &la);
        let f2 = &y + &(&x4 * &lb);
        let core = &(&f1 * &f2) * &f2;
        let tail = &(&(&ld * &Poly::var_pow(&joined, "x", 2)) * &y)
            + &(&(&lb * &ld) * &Poly::var_pow(&joined, "x", 6));
        &(&core + &tail) + &lz
    };
    let x6f = &Poly::var_pow(&joined, "x", 6) * &f;
    // verification of the quotient identity on the (s, t)-rewrite:
    // (t + b s^2)^3 + (a-b) s^2 (t + b s^2)^2 + d s^2 (t + b s^2) + z s^2
    //   == x^6 F rewritten in s = x^3, t = x^2 y.
    let stv = {
        let mut names: Vec<&str> = vec!["s", "t"];
        let mut weights = vec![3i64, 6];
        for (n, w) in vars.names().iter().zip(vars.weights()) {
            names.push(n);
            weights.push(*w);
        }
        VarSet::new(&names, &weights)
    };
    let lift_st = |p: &Poly| -> Poly {
        let mapping: Vec<usize> = (0..vars.len()).map(|i| i + 2).collect();
        p.embed(&stv, &mapping)
    };
    let s = Poly::var(&stv, "s");
    let t = Poly::var(&stv, "t");
    let tb = &t + &(&lift_st(beta) * &(&s * &s));
    let lhs = {
        let c1 = &tb.pow(3)
            + &(&(&(&lift_st(alpha) - &lift_st(beta)) * &(&s * &s)) * &tb.pow(2));
        let c2 = &(&lift_st(delta) * &(&s * &s)) * &tb;
        &(&c1 + &c2) + &(&lift_st(zeta) * &(&s * &s))
    };
    let rewritten = rewrite_in_s_t(&x6f, &stv, 0, 1)?;
    if &rewritten - &lhs != Poly::zero(&stv) {
        return Err(Error::Internal("quotient rewrite identity failed".into()));
    }
    // mu^2 = -(zeta l^3 + delta l^2 + (alpha - beta) l)
    EllipticModel::from_cubic(
        &-zeta,
        &-delta,
        &-&(alpha - beta),
        &Poly::zero(&vars),
    )
}

/// Express a polynomial supported on the monoid generated by `x^3` and
/// `x^2 y` in the coordinates `(s, t)`; the family's parameters ride along.
fn rewrite_in_s_t(f: &Poly, stv: &Arc<VarSet>, xi: usize, yi: usize) -> Result<Poly, Error> {
    let mut out = Poly::zero(stv);
    for (m, c) in f.terms() {
        let i = m.0[xi] as i64;
        let j = m.0[yi] as i64;
        // x^i y^j = s^a t^b with 3a + 2b = i, b = j
        let b = j;
        let rem = i - 2 * j;
        if rem < 0 || rem % 3 != 0 {
            return Err(Error::Internal(format!(
                "monomial x^{i} y^{j} is not an invariant of the order-3 action"
            )));
        }
        let a = rem / 3;
        let mut exps = vec![a as u16, b as u16];
        for (k, &e) in m.0.iter().enumerate() {
            if k != xi && k != yi {
                exps.push(e);
            }
        }
        out.add_term(Mono(exps), c.clone());
    }
    Ok(out)
}

/// Elliptic quotient of the deformed Painlevé curve by `x -> -x`: rewrites in
/// `t = y - x^4`, `s = x^2`, eliminates `s` by completing the square, strips
/// square factors of the discriminant, and reduces to Weierstrass form.
pub fn elliptic_quotient_deformed(curve: &CurveFamily) -> Result<EllipticModel, Error> {
    let quotient = tau_quotient_model(curve)?;
    let vars = quotient.vars().clone();
    let si = vars.index_of("s").unwrap();
    let ti = vars.index_of("t").unwrap();
    let qu = UniPoly::from_poly(&quotient, si);
    if qu.degree() != 2 {
        return Err(Error::Internal("quotient is not quadratic in s".into()));
    }
    let (a, b, c) = (qu.coeff(2), qu.coeff(1), qu.coeff(0));
    let disc = &(&b * &b) - &(&(&a * &c)).scale(&Scalar::from_int(4));
    if disc.is_zero() {
        return Err(Error::DegenerateConfiguration);
    }
    // strip even-multiplicity factors
    let du = UniPoly::from_poly(&disc, ti);
    let dec = squarefree_decomposition(&du)?;
    let mut radicand = UniPoly {
        vars: du.vars.clone(),
        main: ti,
        coeffs: vec![Poly::one(&vars)],
    };
    for f in &dec {
        if f.multiplicity % 2 == 1 {
            radicand = radicand.mul(&f.factor);
        }
    }
    match radicand.degree() {
        3 => EllipticModel::from_cubic(
            &radicand.coeff(3),
            &radicand.coeff(2),
            &radicand.coeff(1),
            &radicand.coeff(0),
        ),
        4 => {
            // mu^2 = quartic(t): j from the binary-quartic invariants
            let co = [
                radicand.coeff(4),
                radicand.coeff(3),
                radicand.coeff(2),
                radicand.coeff(1),
                radicand.coeff(0),
            ];
            let (jn, jd) = j_invariant_quartic(&co)?;
            Ok(EllipticModel {
                a2: Poly::zero(&vars),
                a4: Poly::zero(&vars),
                a6: Poly::zero(&vars),
                j_num: jn,
                j_den: jd,
            })
        }
        d => Err(Error::Internal(format!(
            "square-reduced radicand has degree {d}, expected 3 or 4"
        ))),
    }
}

/// The `x -> -x` quotient model of the deformed curve in coordinates
/// `t = y - x^4`, `s = x^2`.
pub fn tau_quotient_model(curve: &CurveFamily) -> Result<Poly, Error> {
    let vars = curve.poly.vars().clone();
    for (m, _) in curve.poly.terms() {
        if m.0[curve.x] % 2 != 0 {
            return Err(Error::Internal("curve is not invariant under x -> -x".into()));
        }
    }
    let stv = {
        let mut names: Vec<&str> = vec!["t", "s"];
        let mut weights = vec![4i64, 2];
        for (i, n) in vars.names().iter().enumerate() {
            if i != curve.x && i != curve.y {
                names.push(n);
                weights.push(vars.weights()[i]);
            }
        }
        VarSet::new(&names, &weights)
    };
    // y = t + s^2, x^2 = s
    let mut out = Poly::zero(&stv);
    let t_plus_s2 = {
        let t = Poly::var(&stv, "t");
        let s = Poly::var(&stv, "s");
        &t + &(&s * &s)
    };
    let mut pow_cache = vec![Poly::one(&stv), t_plus_s2.clone()];
    for (m, c) in curve.poly.terms() {
        let i = (m.0[curve.x] / 2) as usize;
        let j = m.0[curve.y] as usize;
        while pow_cache.len() <= j {
            let next = &pow_cache[pow_cache.len() - 1] * &t_plus_s2;
            pow_cache.push(next);
        }
        let mut exps = vec![0u16, i as u16];
        for (k, &e) in m.0.iter().enumerate() {
            if k != curve.x && k != curve.y {
                exps.push(e);
            }
        }
        let term = pow_cache[j].mul_mono(&Mono(exps), c);
        out = &out + &term;
    }
    Ok(out)
}

/// The sextic in `z = x^2` whose square roots are the finite branch points of
/// the deformed Painlevé curve over the x-line, normalized to the primitive
/// integral form with the stated leading coefficient sign.
pub fn ramification_sextic_deformed(curve: &CurveFamily) -> Result<Poly, Error> {
    let f = &curve.poly;
    let fy = f.derivative(curve.y);
    let r = resultant(f, &fy, curve.y)?;
    // even x-powers only; substitute z = x^2 on a (z, h, g, a) set
    let vars = f.vars().clone();
    let zv = {
        let mut names: Vec<&str> = vec!["z"];
        let mut weights = vec![2i64];
        for (i, n) in vars.names().iter().enumerate() {
            if i != curve.x && i != curve.y {
                names.push(n);
                weights.push(vars.weights()[i]);
            }
        }
        VarSet::new(&names, &weights)
    };
    let mut out = Poly::zero(&zv);
    for (m, c) in r.terms() {
        let e = m.0[curve.x];
        if e % 2 != 0 || m.0[curve.y] != 0 {
            return Err(Error::Internal("resultant is not even in x".into()));
        }
        let mut exps = vec![e / 2];
        for (k, &ee) in m.0.iter().enumerate() {
            if k != curve.x && k != curve.y {
                exps.push(ee);
            }
        }
        out.add_term(Mono(exps), c.clone());
    }
    Ok(out.primitive_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{solve_balance, InitialPoint};

    fn balanced() -> (HamiltonianSystem, PrincipalBalance) {
        let sys = HamiltonianSystem::dgr();
        let b = solve_balance(&sys, &InitialPoint::from_ints(-2, 0, 4, 0), 20).unwrap();
        (sys, b)
    }

    #[test]
    fn invariants_match_displays() {
        let (sys, b) = balanced();
        let (h, g) = invariants_on_balance(&sys, &b).unwrap();
        let gv = b.gamma_vars();
        let h_expect =
            parse_poly(&gv, "520*g1^6 - 60*g1^2*g2 + 28*g3 - 8*a*g1^2").unwrap();
        assert_eq!(h, h_expect);
        let g_expect = parse_poly(
            &gv,
            "-345600*g1^12 + 117504*g1^8*g2 - 24192*g1^6*g3 - 9072*g1^4*g2^2 + 6048*g1^2*g2*g3 + 324*g2^3 \
             + 8832*a*g1^8 - 1152*a*g1^4*g2 + 336*a*g1^2*g3 - 54*a*g2^2 - 72*a^2*g1^4",
        )
        .unwrap();
        assert_eq!(g, g_expect);
    }

    #[test]
    fn plane_model_matches_displays() {
        let (sys, b) = balanced();
        let curve = painleve_plane_model(&sys, &b).unwrap();
        let cv = curve.poly.vars().clone();
        let expect = parse_poly(
            &cv,
            "y^3 + 3*y^2*x^4 - 3/2*a*y^2 - 9*y*x^8 + 9*a*y*x^4 + 9*h*y*x^2 + 5*x^12 \
             - 15/2*a*x^8 - 9*h*x^6 + 3/2*a^2*x^4 + 9/2*h*a*x^2 - 9/4*g",
        )
        .unwrap();
        assert_eq!(curve.poly, expect);
        // readoff at a = 0
        let at_a0 = CurveFamily {
            poly: curve
                .poly
                .specialize(&[(cv.index_of("a").unwrap(), Scalar::zero())]),
            x: curve.x,
            y: curve.y,
        };
        let ro = family_readoff(&at_a0).unwrap();
        let consts: Vec<String> = ro.iter().take(3).map(|p| p.to_text()).collect();
        assert_eq!(consts, vec!["5", "-1", "-1"]);
        assert_eq!(ro[3].to_text(), "9*h");
        assert_eq!(ro[4].to_text(), "-9*h");
        assert_eq!(ro[5].to_text(), "-9/4*g");
    }

    #[test]
    fn genus_ladder_of_the_family() {
        let fam = CurveFamily::general();
        // (i) generic: genus 10 from 24 simple points
        let c = genus_simple_ramification(&fam, MultiplicityRule::SimpleOnly).unwrap();
        assert_eq!(c.genus, 10);
        assert_eq!(c.finite_contribution, 24);
        assert_eq!(c.points_at_infinity, 3);
        // (ii) beta = gamma: genus 7
        let v = family_vars();
        let f2 = fam.substitute_params(&[("gamma", Poly::var(&v, "beta"))]);
        let c2 = genus_simple_ramification(&f2, MultiplicityRule::SimpleOnly).unwrap();
        assert_eq!(c2.genus, 7);
        assert_eq!(c2.finite_contribution, 18);
        // (iii) eps = beta delta too: genus 4
        let f3 = f2.substitute_params(&[(
            "eps",
            &Poly::var(&v, "beta") * &Poly::var(&v, "delta"),
        )]);
        let c3 = genus_simple_ramification(&f3, MultiplicityRule::SimpleOnly).unwrap();
        assert_eq!(c3.genus, 4);
        assert_eq!(c3.finite_contribution, 12);
    }

    #[test]
    fn resultant_coefficients_match_family_formulas() {
        let fam = CurveFamily::general();
        let f = &fam.poly;
        let v = f.vars().clone();
        let r = resultant(f, &f.derivative(1), 1).unwrap();
        let ru = UniPoly::from_poly(&r, 0);
        assert_eq!(ru.degree(), 24);
        let expect24 = parse_poly(
            &v,
            "(alpha - beta)^2*(beta - gamma)^2*(gamma - alpha)^2",
        );
        // expand manually: parser has no parentheses over products of sums
        let d = |a: &str, b: &str| -> Poly {
            &Poly::var(&v, a) - &Poly::var(&v, b)
        };
        let e24 = &(&(&d("alpha", "beta") * &d("alpha", "beta"))
            * &(&d("beta", "gamma") * &d("beta", "gamma")))
            * &(&d("gamma", "alpha") * &d("gamma", "alpha"));
        assert_eq!(ru.coeff(24), e24);
        let _ = expect24;
        // beta = gamma: x^18 coefficient 4 (alpha - beta)^3 (delta beta - eps)
        let f2 = fam.substitute_params(&[("gamma", Poly::var(&v, "beta"))]);
        let r2 = resultant(&f2.poly, &f2.poly.derivative(1), 1).unwrap();
        let r2u = UniPoly::from_poly(&r2, 0);
        assert_eq!(r2u.degree(), 18);
        let ab = d("alpha", "beta");
        let e18 = (&(&(&ab * &ab) * &ab)
            * &(&(&Poly::var(&v, "delta") * &Poly::var(&v, "beta")) - &Poly::var(&v, "eps")))
            .scale(&Scalar::from_int(4));
        assert_eq!(r2u.coeff(18), e18);
    }

    #[test]
    fn cyclic_cover_genera() {
        let v = VarSet::new(&["zc", "dc", "ec"], &[0, 0, 0]);
        let zc = Poly::var(&v, "zc");
        let dc = Poly::var(&v, "dc");
        let ec = Poly::var(&v, "ec");
        // generic symbolic parameters: three distinct roots
        assert_eq!(cyclic_cover_genus(&zc, &dc, &ec).unwrap(), 4);
        // double root: dc^2 = 4 zc ec, e.g. (1, 2, 1)
        let one = Poly::one(&v);
        let two = Poly::int(&v, 2);
        assert_eq!(cyclic_cover_genus(&one, &two, &one).unwrap(), 1);
        // zc = 0, others nonzero: genus-2 component
        let zero = Poly::zero(&v);
        assert_eq!(cyclic_cover_genus(&zero, &dc, &ec).unwrap(), 2);
    }

    #[test]
    fn family_j_invariant_formula() {
        // symbolic j(E2) = 2^8 (delta^2 - 3(alpha-beta) zeta)^3
        //                / ((alpha-beta)^2 (delta^2 - 4(alpha-beta) zeta) zeta^2)
        let v = VarSet::new(&["alpha", "beta", "delta", "zeta"], &[0, 0, 6, 12]);
        let alpha = Poly::var(&v, "alpha");
        let beta = Poly::var(&v, "beta");
        let delta = Poly::var(&v, "delta");
        let zeta = Poly::var(&v, "zeta");
        let model = elliptic_quotient_family(&alpha, &beta, &delta, &zeta).unwrap();
        let ab = &alpha - &beta;
        let d2 = &delta * &delta;
        let num = {
            let t = &d2 - &(&ab * &zeta).scale(&Scalar::from_int(3));
            (&(&t * &t) * &t).scale(&Scalar::from_int(256))
        };
        let den = {
            let t = &d2 - &(&ab * &zeta).scale(&Scalar::from_int(4));
            &(&(&ab * &ab) * &t) * &(&zeta * &zeta)
        };
        assert!(model.j_equals(&num, &den));
    }

    #[test]
    fn dgr_j_invariant_in_h_g() {
        // specialization (5, -1, 9h, -9/4 g): j = 2^7 3^3 (2h^2+g)^3 / (g^2 (3h^2+2g))
        let v = VarSet::new(&["h", "g"], &[6, 12]);
        let model = elliptic_quotient_family(
            &Poly::int(&v, 5),
            &Poly::int(&v, -1),
            &Poly::var(&v, "h").scale(&Scalar::from_int(9)),
            &Poly::var(&v, "g").scale(&Scalar::from_frac(-9, 4)),
        )
        .unwrap();
        let h = Poly::var(&v, "h");
        let g = Poly::var(&v, "g");
        let t = &(&h * &h).scale(&Scalar::from_int(2)) + &g;
        let num = (&(&t * &t) * &t).scale(&Scalar::from_int(3456));
        let den = {
            let s = &(&h * &h).scale(&Scalar::from_int(3)) + &g.scale(&Scalar::from_int(2));
            &(&g * &g) * &s
        };
        assert!(model.j_equals(&num, &den));
    }

    #[test]
    fn deformed_quotient_and_j() {
        let (sys, b) = balanced();
        let curve = painleve_plane_model(&sys, &b).unwrap();
        // tau-quotient model: 4F == 24 t^2 s^2 + 4 t^3 + 24 a t s^2 - 6 a t^2
        //                     + 36 h t s + 6 a^2 s^2 + 18 a h s - 9 g
        let q = tau_quotient_model(&curve).unwrap();
        let qv = q.vars().clone();
        let display = parse_poly(
            &qv,
            "24*t^2*s^2 + 4*t^3 + 24*a*t*s^2 - 6*a*t^2 + 36*h*t*s + 6*a^2*s^2 + 18*a*h*s - 9*g",
        )
        .unwrap();
        assert_eq!(q.scale(&Scalar::from_int(4)), display);
        let model = elliptic_quotient_deformed(&curve).unwrap();
        // j = -768 a^6 / (12 a^3 h^2 + 8 a^3 g + 81 h^4 + 108 h^2 g + 36 g^2)
        let jv = model.j_num.vars().clone();
        let num = parse_poly(&jv, "-768*a^6").unwrap();
        let den = parse_poly(
            &jv,
            "12*a^3*h^2 + 8*a^3*g + 81*h^4 + 108*h^2*g + 36*g^2",
        )
        .unwrap();
        assert!(model.j_equals(&num, &den));
    }

    #[test]
    fn quartic_j_values() {
        let v = VarSet::new(&["u"], &[0]);
        let c = |n: i64| Poly::int(&v, n);
        // roots {0, 1, -1, infinity}: X^3 - X Y^2 -> harmonic, j = 1728
        let co = [c(0), c(1), c(0), c(-1), c(0)];
        let (n, d) = j_invariant_quartic(&co).unwrap();
        assert_eq!(
            n.constant_coeff().expect_rational() / d.constant_coeff().expect_rational(),
            BigRational::from_integer(1728.into())
        );
        // z(z^3 - 1): equianharmonic, j = 0
        let co = [c(0), c(1), c(0), c(0), c(-1)];
        let (n, _) = j_invariant_quartic(&co).unwrap();
        assert!(n.is_zero());
        // repeated root: X^4 -> degenerate
        let co = [c(1), c(0), c(0), c(0), c(0)];
        assert!(j_invariant_quartic(&co).is_err());
    }

    #[test]
    fn deformed_ramification_sextic() {
        let (sys, b) = balanced();
        let curve = painleve_plane_model(&sys, &b).unwrap();
        let sextic = ramification_sextic_deformed(&curve).unwrap();
        let zv = sextic.vars().clone();
        let zi = zv.index_of("z").unwrap();
        assert_eq!(sextic.degree_in(zi), 6);
        let coeff_of_z = |e: u16| -> Poly {
            let mut acc = Poly::zero(&zv);
            for (m, c) in sextic.terms() {
                if m.0[zi] == e {
                    let mut m2 = m.clone();
                    m2.0[zi] = 0;
                    acc.add_term(m2, c.clone());
                }
            }
            acc
        };
        let lead = coeff_of_z(6);
        let expect_lead = parse_poly(&zv, "256*a^3 + 1728*h^2 + 1152*g").unwrap();
        let const_term = coeff_of_z(0);
        let expect_const = parse_poly(&zv, "-18*a^3*g - 81*g^2").unwrap();
        // proportional with one global scalar
        assert!(
            (&(&lead * &expect_const) - &(&const_term * &expect_lead)).is_zero(),
            "lead {lead} / const {const_term}"
        );
    }
}
