//! The DGR system family: canonical variables `(q, p)` and `(Q, P)` with
//! weights `(2, 3)` and `(2, 3)`, deformation parameter `a` of weight 4,
//! the two conserved quantities `H` (weight 6) and `G` (weight 12), the
//! order-6 diagonal symmetry at `a = 0`, and the structural checks built
//! on them.

use crate::error::Error;
use crate::linalg::Matrix;
use crate::poly::{Mono, Poly, VarSet};
use crate::scalar::Scalar;
use crate::upoly::{rational_roots, resultant, squarefree_part, UniPoly};
use num::rational::BigRational;
use num::traits::Zero;
use std::sync::Arc;

/// Phase-space variables plus the deformation parameter, in the fixed order
/// `q, Q, p, P, a` with weights `2, 2, 3, 3, 4`.
pub fn phase_vars() -> Arc<VarSet> {
    VarSet::new(&["q", "Q", "p", "P", "a"], &[2, 2, 3, 3, 4])
}

pub const Q1: usize = 0;
pub const Q2: usize = 1;
pub const P1: usize = 2;
pub const P2: usize = 3;
pub const DEF_A: usize = 4;

/// Bracket sign convention. The time evolution used here is
/// `{H, G} = sum_i dH/dp_i dG/dq_i - dH/dq_i dG/dp_i`; the flag selects the
/// opposite (more common) sign.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum BracketConvention {
    #[default]
    Evolution,
    Opposite,
}

/// Poisson bracket of two polynomials in `q, Q, p, P, a`.
pub fn poisson_bracket(f: &Poly, g: &Poly) -> Poly {
    poisson_bracket_with(f, g, BracketConvention::Evolution)
}

pub fn poisson_bracket_with(f: &Poly, g: &Poly, conv: BracketConvention) -> Poly {
    let pairs = [(Q1, P1), (Q2, P2)];
    let mut acc = Poly::zero(f.vars());
    for (q, p) in pairs {
        let term = &(&f.derivative(p) * &g.derivative(q)) - &(&f.derivative(q) * &g.derivative(p));
        acc = &acc + &term;
    }
    match conv {
        BracketConvention::Evolution => acc,
        BracketConvention::Opposite => -&acc,
    }
}

/// The DGR Hamiltonian system: conserved pair `(H, G)` over `Q[q,Q,p,P,a]`.
#[derive(Clone)]
pub struct HamiltonianSystem {
    pub vars: Arc<VarSet>,
    pub h: Poly,
    pub g: Poly,
}

impl HamiltonianSystem {
    /// The normalized system, constructed by [`canonicalize_dgr`].
    pub fn dgr() -> Self {
        canonicalize_dgr().expect("canonicalization of the DGR pair is exact")
    }

    pub fn h_at_a0(&self) -> Poly {
        self.h.specialize(&[(DEF_A, Scalar::zero())])
    }

    pub fn g_at_a0(&self) -> Poly {
        self.g.specialize(&[(DEF_A, Scalar::zero())])
    }

    /// Hamiltonian vector field `x_dot = {H, x}` as four polynomials
    /// ordered `(q, Q, p, P)`.
    pub fn vector_field(&self) -> [Poly; 4] {
        [
            poisson_bracket(&self.h, &Poly::var(&self.vars, "q")),
            poisson_bracket(&self.h, &Poly::var(&self.vars, "Q")),
            poisson_bracket(&self.h, &Poly::var(&self.vars, "p")),
            poisson_bracket(&self.h, &Poly::var(&self.vars, "P")),
        ]
    }
}

/// Diagonal order-6 symmetry: multiplies each variable by the listed power
/// of the primitive sixth root `rho`.
#[derive(Clone, Debug)]
pub struct SymmetryAction {
    /// Powers of `rho` on `(q, Q, p, P, a)`.
    pub phase_powers: Vec<i64>,
}

impl SymmetryAction {
    pub fn sigma() -> Self {
        SymmetryAction {
            phase_powers: vec![2, 2, 3, 3, 0],
        }
    }

    /// Powers of `rho` on the projective coordinates `z0..z5`.
    pub fn sigma_on_z() -> Vec<i64> {
        vec![0, 2, 5, 0, 2, 3]
    }

    /// Apply `sigma^k` to a polynomial over the phase variables.
    pub fn apply(&self, f: &Poly, k: i64) -> Poly {
        let mut out = Poly::zero(f.vars());
        for (m, c) in f.terms() {
            let mut power = 0i64;
            for (i, &e) in m.0.iter().enumerate() {
                power += self.phase_powers[i] * e as i64 * k;
            }
            out.add_term(m.clone(), c * &Scalar::rho_pow(power));
        }
        out
    }
}

/// Original coordinates of the system before the symplectic normalization.
fn original_vars() -> Arc<VarSet> {
    VarSet::new(&["q1", "q2", "p1", "p2"], &[2, 2, 3, 3])
}

/// Builds the normalized conserved pair: starts from the original
/// `sqrt(-3)`-coefficient Hamiltonian and second integral, applies the
/// symplectic substitution `(q1, q2, p1, p2) -> (q, sqrt(-3) Q, p, P/sqrt(-3))`,
/// rescales the second integral by `sqrt(-3)`, verifies that the extension
/// part cancels, and attaches the deformation term `a q` together with its
/// corrections to `G`. The output satisfies `{H, G} = 0` identically.
pub fn canonicalize_dgr() -> Result<HamiltonianSystem, Error> {
    let ov = original_vars();
    let s3 = Scalar::sqrt_minus_three();
    let q1 = Poly::var(&ov, "q1");
    let q2 = Poly::var(&ov, "q2");
    let p1 = Poly::var(&ov, "p1");
    let p2 = Poly::var(&ov, "p2");

    // H = 1/2 (p1^2 + p2^2) + q1^3 + 1/2 q1 q2^2 + sqrt(-3)/18 q2^3
    let h0 = &(&(&(&p1 * &p1) + &(&p2 * &p2)).scale(&Scalar::from_frac(1, 2))
        + &(&(&q1 * &q1) * &q1))
        + &(&(&q1 * &(&q2 * &q2)).scale(&Scalar::from_frac(1, 2))
            + &(&(&q2 * &q2) * &q2).scale(&(&s3 * &Scalar::from_frac(1, 18))));

    // G = p1 p2^3 - sqrt(-3)/2 p2^4 + 1/2 q2^3 p1^2
    //     - (3/2 q1 q2^2 - sqrt(-3)/2 q2^3) p1 p2
    //     + (3 q1^2 q2 - sqrt(-3) q1 q2^2 + 1/2 q2^3) p2^2
    //     + 1/2 q1^3 q2^3 + sqrt(-3)/8 q1^2 q2^4 + 1/4 q1 q2^5 + 5 sqrt(-3)/72 q2^6
    let q2_2 = &q2 * &q2;
    let q2_3 = &q2_2 * &q2;
    let p2_2 = &p2 * &p2;
    let g0 = {
        let t1 = &(&p1 * &p2) * &p2_2;
        let t2 = (&p2_2 * &p2_2).scale(&(&s3 * &Scalar::from_frac(-1, 2)));
        let t3 = (&q2_3 * &(&p1 * &p1)).scale(&Scalar::from_frac(1, 2));
        let bracket1 = &(&q1 * &q2_2).scale(&Scalar::from_frac(3, 2))
            - &q2_3.scale(&(&s3 * &Scalar::from_frac(1, 2)));
        let t4 = -&(&bracket1 * &(&p1 * &p2));
        let bracket2 = &(&(&(&q1 * &q1) * &q2).scale(&Scalar::from_int(3))
            - &(&q1 * &q2_2).scale(&s3))
            + &q2_3.scale(&Scalar::from_frac(1, 2));
        let t5 = &bracket2 * &p2_2;
        let t6 = (&(&(&q1 * &q1) * &q1) * &q2_3).scale(&Scalar::from_frac(1, 2));
        let t7 = (&(&(&q1 * &q1) * &q2_2) * &q2_2).scale(&(&s3 * &Scalar::from_frac(1, 8)));
        let t8 = (&(&q1 * &q2_3) * &q2_2).scale(&Scalar::from_frac(1, 4));
        let t9 = (&q2_3 * &q2_3).scale(&(&s3 * &Scalar::from_frac(5, 72)));
        &(&(&(&(&(&(&(&t1 + &t2) + &t3) + &t4) + &t5) + &t6) + &t7) + &t8) + &t9
    };

    // Substitute q1 -> q, q2 -> sqrt(-3) Q, p1 -> p, p2 -> P / sqrt(-3),
    // reading the result over the phase variables.
    let pv = phase_vars();
    let subst = |f: &Poly| -> Poly {
        let mut acc = Poly::zero(&pv);
        for (m, c) in f.terms() {
            let (e1, e2, e3, e4) = (m.0[0], m.0[1], m.0[2], m.0[3]);
            let mut coeff = c.clone();
            coeff *= &s3.pow(e2 as u32);
            coeff *= &s3.inv().pow(e4 as u32);
            let mono = Mono(vec![e1, e2, e3, e4, 0]);
            acc.add_term(mono, coeff);
        }
        acc
    };
    let h_sub = subst(&h0);
    let g_sub = subst(&g0).scale(&s3.inv());

    for f in [&h_sub, &g_sub] {
        for (_, c) in f.terms() {
            if !c.is_rational() {
                return Err(Error::Internal(
                    "residual extension part after normalization".into(),
                ));
            }
        }
    }

    // Deformation: a q on H; the matching corrections on G.
    let a = Poly::var(&pv, "a");
    let q = Poly::var(&pv, "q");
    let qq = Poly::var(&pv, "Q");
    let p = Poly::var(&pv, "p");
    let pp = Poly::var(&pv, "P");
    let h = &h_sub + &(&a * &q);
    let g_corr1 = {
        // -3/2 (q^2 + qQ - 2Q^2) Q^2 + Q p P + 1/3 (q - Q) P^2
        // (unique weight-8 solution of {H, G} = 0 at order a^1)
        let b = &(&(&q * &q) + &(&q * &qq)) - &(&qq * &qq).scale(&Scalar::from_int(2));
        let t1 = (&b * &(&qq * &qq)).scale(&Scalar::from_frac(-3, 2));
        let t2 = &(&qq * &p) * &pp;
        let t3 = (&(&q - &qq) * &(&pp * &pp)).scale(&Scalar::from_frac(1, 3));
        &(&t1 + &t2) + &t3
    };
    let g = &(&g_sub + &(&a * &g_corr1))
        - &(&(&a * &a) * &(&qq * &qq)).scale(&Scalar::from_frac(3, 2));

    let sys = HamiltonianSystem {
        vars: pv.clone(),
        h,
        g,
    };
    if !poisson_bracket(&sys.h, &sys.g).is_zero() {
        return Err(Error::Internal("conserved pair does not commute".into()));
    }
    Ok(sys)
}

/// Number of fixed points of `sigma^power` on the fibre over `(h, g)` at the
/// given deformation value. `power = 1` fixes only the origin, `2` fixes
/// `{q = Q = 0}`, `3` fixes `{p = P = 0}`.
pub fn fixed_point_count(
    sys: &HamiltonianSystem,
    power: u32,
    h_val: &BigRational,
    g_val: &BigRational,
    a_val: &BigRational,
) -> Result<usize, Error> {
    let pv = &sys.vars;
    let hv = Scalar::from_rational(h_val.clone());
    let gv = Scalar::from_rational(g_val.clone());
    let av = Scalar::from_rational(a_val.clone());
    let (kill, keep) = match power {
        1 => {
            // fixed locus is the origin; it lies on the fibre only over (0, 0)
            let on_fibre = h_val.is_zero() && g_val.is_zero();
            return Ok(if on_fibre { 1 } else { 0 });
        }
        2 => ((Q1, Q2), (P1, P2)),
        3 => ((P1, P2), (Q1, Q2)),
        _ => return Err(Error::Internal("power must be 1, 2 or 3".into())),
    };
    let f1 = &sys
        .h
        .specialize(&[(kill.0, Scalar::zero()), (kill.1, Scalar::zero()), (DEF_A, av.clone())])
        - &Poly::constant(pv, hv);
    let f2 = &sys
        .g
        .specialize(&[(kill.0, Scalar::zero()), (kill.1, Scalar::zero()), (DEF_A, av)])
        - &Poly::constant(pv, gv);
    // Count distinct solutions by eliminating either variable; the two counts
    // must agree, otherwise the fibre is degenerate for this purpose.
    let count_via = |elim: usize, remain: usize| -> Result<usize, Error> {
        let r = resultant(&f1, &f2, elim)?;
        if r.is_zero() {
            return Err(Error::DegenerateFibre);
        }
        let u = UniPoly::from_poly(&r, remain);
        let sf = squarefree_part(&u);
        Ok(sf.degree().max(0) as usize)
    };
    let n1 = count_via(keep.0, keep.1)?;
    let n2 = count_via(keep.1, keep.0)?;
    if n1 != n2 {
        return Err(Error::DegenerateFibre);
    }
    Ok(n1)
}

/// Fixed-point counts at a deterministic generic sequence of `(h, g)` values,
/// retrying on degeneracy.
pub fn fixed_point_count_generic(
    sys: &HamiltonianSystem,
    power: u32,
    a_val: &BigRational,
) -> Result<usize, Error> {
    let seq: [(i64, i64); 5] = [(1, 1), (2, 3), (5, 7), (3, -1), (7, 2)];
    let mut last = Err(Error::DegenerateFibre);
    for (h, g) in seq {
        // keep off the undeformed discriminant (3h^2 + 2g) g = 0
        if g == 0 || 3 * h * h + 2 * g == 0 {
            continue;
        }
        last = fixed_point_count(
            sys,
            power,
            &BigRational::from_integer(h.into()),
            &BigRational::from_integer(g.into()),
            a_val,
        );
        if last.is_ok() {
            return last;
        }
    }
    last
}

/// The four weighted-homogeneous generators of the reduced first component
/// of the zero fibre (an open Whitney umbrella).
pub fn whitney_component_generators() -> Vec<Poly> {
    let pv = phase_vars();
    [
        "3*Q*p + 2*q*P + Q*P",
        "9*q*Q^2 - 9*Q^3 + 2*P^2",
        "9*q^2*Q - 9*Q^3 - 3*p*P + P^2",
        "6*q^3 - 6*Q^3 + 3*p^2 + P^2",
    ]
    .iter()
    .map(|t| crate::poly::parse_poly(&pv, t).unwrap())
    .collect()
}

/// Proof record for ideal membership with graded multipliers.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    /// `multipliers[i][j]` multiplies generator `j` in the decomposition of
    /// target `i` (`0 = H`, `1 = G`).
    pub multipliers: Vec<Vec<Poly>>,
}

/// Shows `H` and `G` (at `a = 0`) lie in the ideal generated by the four
/// component equations, by solving the graded linear system for
/// weighted-homogeneous multipliers. Returns the multipliers.
pub fn verify_component_membership(sys: &HamiltonianSystem) -> Result<MembershipCertificate, Error> {
    let pv = &sys.vars;
    let gens = whitney_component_generators();
    let targets = [sys.h_at_a0(), sys.g_at_a0()];
    let mut multipliers = Vec::new();
    for target in &targets {
        let w_target = target
            .weighted_degree()
            .ok_or_else(|| Error::Internal("zero target".into()))?;
        // Unknowns: coefficients of each weighted monomial of each multiplier.
        let mut columns: Vec<(usize, Mono)> = Vec::new();
        for (j, gen) in gens.iter().enumerate() {
            let w_gen = gen.weighted_degree().unwrap();
            let w_mult = w_target - w_gen;
            if w_mult < 0 {
                continue;
            }
            for m in monomials_of_weight(pv, w_mult, 4) {
                columns.push((j, m));
            }
        }
        // Rows: coefficients of every weight-w_target monomial in q,Q,p,P.
        let row_monos = monomials_of_weight(pv, w_target, 4);
        let mut mat = Matrix::zero(row_monos.len(), columns.len());
        for (cj, (j, m)) in columns.iter().enumerate() {
            let prod = gens[*j].mul_mono(m, &Scalar::one());
            for (ri, rm) in row_monos.iter().enumerate() {
                mat[(ri, cj)] = prod.coeff(rm);
            }
        }
        let rhs: Vec<Scalar> = row_monos.iter().map(|m| target.coeff(m)).collect();
        let sol = mat.solve(&rhs).ok_or_else(|| {
            Error::Internal("membership system infeasible; claim falsified".into())
        })?;
        let mut mults = vec![Poly::zero(pv); gens.len()];
        for ((j, m), c) in columns.iter().zip(sol) {
            if !c.is_zero() {
                mults[*j].add_term(m.clone(), c);
            }
        }
        // exact check
        let mut acc = Poly::zero(pv);
        for (mult, gen) in mults.iter().zip(&gens) {
            acc = &acc + &(mult * gen);
        }
        if &acc - target != Poly::zero(pv) {
            return Err(Error::Internal("membership certificate failed".into()));
        }
        multipliers.push(mults);
    }
    Ok(MembershipCertificate { multipliers })
}

/// All monomials of the given weighted degree in the first `nvars` variables.
pub fn monomials_of_weight(vars: &Arc<VarSet>, weight: i64, nvars: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u16; vars.len()];
    fn rec(
        vars: &Arc<VarSet>,
        nvars: usize,
        idx: usize,
        remaining: i64,
        current: &mut Vec<u16>,
        out: &mut Vec<Mono>,
    ) {
        if idx == nvars {
            if remaining == 0 {
                out.push(Mono(current.clone()));
            }
            return;
        }
        let w = vars.weights()[idx];
        if w == 0 {
            assert_eq!(remaining, 0, "weight-0 variable in graded enumeration");
        }
        let max_e = if w > 0 { remaining / w } else { 0 };
        for e in 0..=max_e {
            current[idx] = e as u16;
            rec(vars, nvars, idx + 1, remaining - e * w, current, out);
        }
        current[idx] = 0;
    }
    rec(vars, nvars, 0, weight, &mut current, &mut out);
    out.sort_by(|a, b| a.cmp(b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn bracket_convention_p_q_is_one() {
        let pv = phase_vars();
        let p = Poly::var(&pv, "p");
        let q = Poly::var(&pv, "q");
        assert_eq!(poisson_bracket(&p, &q), Poly::one(&pv));
        assert_eq!(
            poisson_bracket_with(&p, &q, BracketConvention::Opposite),
            -&Poly::one(&pv)
        );
    }

    #[test]
    fn normalized_pair_matches_display() {
        let sys = HamiltonianSystem::dgr();
        let pv = &sys.vars;
        let h_expect = parse_poly(
            pv,
            "1/2*p^2 - 1/6*P^2 + q^3 - 3/2*q*Q^2 + 1/2*Q^3 + a*q",
        )
        .unwrap();
        assert_eq!(sys.h, h_expect);
        assert!(sys.h.is_weighted_homogeneous());
        assert_eq!(sys.h.weighted_degree(), Some(6));
        assert!(sys.g.is_weighted_homogeneous());
        assert_eq!(sys.g.weighted_degree(), Some(12));
    }

    #[test]
    fn conserved_pair_commutes_symbolically() {
        let sys = HamiltonianSystem::dgr();
        assert!(poisson_bracket(&sys.h, &sys.g).is_zero());
        assert!(poisson_bracket(&sys.h, &sys.h).is_zero());
    }

    #[test]
    fn sigma_preserves_the_pair_at_a0() {
        let sys = HamiltonianSystem::dgr();
        let sigma = SymmetryAction::sigma();
        let h0 = sys.h_at_a0();
        let g0 = sys.g_at_a0();
        assert_eq!(sigma.apply(&h0, 1), h0);
        assert_eq!(sigma.apply(&g0, 1), g0);
        assert_eq!(sigma.apply(&h0, 6), h0);
    }

    #[test]
    fn fixed_point_counts_at_a0() {
        let sys = HamiltonianSystem::dgr();
        let zero = BigRational::zero();
        assert_eq!(fixed_point_count_generic(&sys, 1, &zero).unwrap(), 0);
        assert_eq!(fixed_point_count_generic(&sys, 2, &zero).unwrap(), 8);
        assert_eq!(fixed_point_count_generic(&sys, 3, &zero).unwrap(), 12);
    }

    #[test]
    fn component_generators_vanish_at_origin() {
        for g in whitney_component_generators() {
            assert!(g.constant_coeff().is_zero());
        }
    }

    #[test]
    fn membership_of_h_and_g() {
        let sys = HamiltonianSystem::dgr();
        let cert = verify_component_membership(&sys).unwrap();
        // weight-1 multiplier space is empty, so H uses constant multipliers
        // on the weight-6 generators only
        let h_mults = &cert.multipliers[0];
        assert!(h_mults[0].is_zero());
        for m in &cert.multipliers[1] {
            if let Some(w) = m.weighted_degree() {
                assert!(w <= 7);
            }
        }
    }
}
