use dgr_core::balance::{solve_balance, InitialPoint};
use dgr_core::curves::*;
use dgr_core::mechanics::HamiltonianSystem;
use dgr_core::upoly::{squarefree_decomposition, UniPoly};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let sys = HamiltonianSystem::dgr();
    let b = solve_balance(&sys, &InitialPoint::from_ints(-2, 0, 4, 0), 20).unwrap();
    eprintln!("balance: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let curve = painleve_plane_model(&sys, &b).unwrap();
    eprintln!("plane model: {:?}", t0.elapsed());
    let t0 = Instant::now();
    let q = tau_quotient_model(&curve).unwrap();
    eprintln!("tau quotient: {:?} ({} terms)", t0.elapsed(), q.num_terms());
    let vars = q.vars().clone();
    let si = vars.index_of("s").unwrap();
    let ti = vars.index_of("t").unwrap();
    let qu = UniPoly::from_poly(&q, si);
    let (a, bb, c) = (qu.coeff(2), qu.coeff(1), qu.coeff(0));
    let t0 = Instant::now();
    let disc = &(&bb * &bb) - &(&(&a * &c)).scale(&dgr_core::scalar::Scalar::from_int(4));
    eprintln!("disc: {:?} ({} terms, deg_t {})", t0.elapsed(), disc.num_terms(), disc.degree_in(ti));
    let t0 = Instant::now();
    let du = UniPoly::from_poly(&disc, ti);
    let dec = squarefree_decomposition(&du).unwrap();
    eprintln!("squarefree: {:?} ({} factors)", t0.elapsed(), dec.len());
    for f in &dec {
        eprintln!("  deg {} mult {}", f.factor.degree(), f.multiplicity);
    }
}
