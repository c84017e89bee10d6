//! Passing between symplectic forms and Poisson bivectors.
//!
//! `μ(ω, π)` substitutes `dx ↦ [π, x]`, and a compatible pair satisfies
//! `μ(ω, π) − σ(π) = D_π(h)` for a homotopy `h`. Both solvers build the
//! missing side level by level in the tangent filtration, solving one exact
//! linear system per level.

use std::collections::BTreeMap;

use crate::algebra::{Element, Generator, Kind};
use crate::cdga::{enumerate_monomials, MonomialBound};
use crate::derham::{self, check_presymplectic, PreSymplectic, PresymplecticReport};
use crate::error::{Error, Result};
use crate::linalg::{self, ElementMatrix, Echelon};
use crate::polyvector::{PoissonStructure, PolyContext};
use crate::scalar::{self, int, ratio};

/// `μ(e, π)`: the algebra map fixing base generators with `dx_a ↦ [π, x_a]`.
pub fn mu(ctx: &PolyContext, e: &Element, pi: &Element) -> Result<Element> {
    let residue = ctx.check_mc(pi)?;
    if !residue.is_zero() {
        return Err(Error::NotMC { residue });
    }
    mu_unchecked(ctx, e, pi)
}

fn mu_images(ctx: &PolyContext, pi: &Element) -> Result<BTreeMap<Generator, Element>> {
    let mut images = BTreeMap::new();
    for g in &ctx.base.generators {
        images.insert(g.differential(), ctx.schouten(pi, &Element::generator(g))?);
    }
    Ok(images)
}

pub(crate) fn mu_unchecked(ctx: &PolyContext, e: &Element, pi: &Element) -> Result<Element> {
    let images = mu_images(ctx, pi)?;
    Ok(e.substitute(&images, &ctx.truncation()))
}

/// `σ(π) = Σ (i − 1) πᵢ`.
pub fn sigma(pi: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in pi.terms() {
        let i = m.tangent_order() as i64;
        out.add_term(m.clone(), c * int(i - 1));
    }
    out
}

fn kappa(ctx: &PolyContext, g: &Generator) -> scalar::Scalar {
    scalar::sign(ctx.shift() * (1 + g.degree()))
}

/// `½ Σ ξ_b ξ_a P^{ab}`.
pub fn bivector_from_matrix(ctx: &PolyContext, p: &ElementMatrix) -> Element {
    let half = ratio(1, 2);
    let mut out = Element::zero();
    for (a, ta) in ctx.tangents.iter().enumerate() {
        for (b, tb) in ctx.tangents.iter().enumerate() {
            let e = p.get(a, b);
            if !e.is_zero() {
                let term = Element::generator(tb).mul(&Element::generator(ta)).mul(e).scale(&half);
                out += &term;
            }
        }
    }
    ctx.truncation().apply(&out)
}

/// `½ Σ dx_b dx_a M_ab`.
pub fn two_form_from_matrix(ctx: &PolyContext, m: &ElementMatrix) -> Element {
    let half = ratio(1, 2);
    let forms = derham::form_generators(&ctx.base);
    let mut out = Element::zero();
    for (a, fa) in forms.iter().enumerate() {
        for (b, fb) in forms.iter().enumerate() {
            let e = m.get(a, b);
            if !e.is_zero() {
                out += &Element::generator(fb).mul(&Element::generator(fa)).mul(e).scale(&half);
            }
        }
    }
    ctx.base.truncation.apply(&out)
}

/// The bivector matrix `K (M⁻¹)ᵀ K` with `K = diag (−1)^{s(1+|x_c|)}`.
fn inverse_bivector_matrix(ctx: &PolyContext, m: &ElementMatrix) -> Result<ElementMatrix> {
    let inv = m.inverse(&ctx.base.truncation)?.transpose();
    let gens = &ctx.base.generators;
    let entries = (0..gens.len())
        .map(|a| (0..gens.len()).map(|b| inv.get(a, b).scale(&(kappa(ctx, &gens[a]) * kappa(ctx, &gens[b])))).collect())
        .collect();
    Ok(ElementMatrix::new(entries))
}

/// The bivector inverse to `ω₂`, certified Maurer–Cartan when `ω₂` is closed.
pub fn invert_two_form(ctx: &PolyContext, omega2: &Element) -> Result<PoissonStructure> {
    let m = derham::two_form_sharp(&ctx.base, omega2);
    let p = inverse_bivector_matrix(ctx, &m)?;
    let pi = bivector_from_matrix(ctx, &p);
    let residue = ctx.check_mc(&pi)?;
    let closed = derham::dr_differential(&ctx.base, omega2)?.is_zero();
    if closed && !residue.is_zero() {
        return Err(Error::MCFailure { residue });
    }
    Ok(PoissonStructure { pi, residue })
}

/// The two-form inverse to the bivector part of `π`.
pub fn invert_bivector(ctx: &PolyContext, pi: &Element) -> Result<Element> {
    let p = ctx.bivector_matrix(pi);
    let gens = &ctx.base.generators;
    let n = gens.len();
    // M = (K Pᵀ K)⁻¹
    let kpk = ElementMatrix::new(
        (0..n)
            .map(|a| (0..n).map(|b| p.get(b, a).scale(&(kappa(ctx, &gens[a]) * kappa(ctx, &gens[b])))).collect())
            .collect(),
    );
    let m = kpk.inverse(&ctx.base.truncation)?;
    Ok(two_form_from_matrix(ctx, &m))
}

/// A Poisson structure, a pre-symplectic structure and a homotopy relating them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityWitness {
    pub context: PolyContext,
    pub omega: PreSymplectic,
    pub pi: Element,
    pub h: Element,
    pub residue: Element,
    pub max_level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub residue: Element,
    pub mc_residue: Element,
    pub closure: PresymplecticReport,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.residue.is_zero() && self.mc_residue.is_zero() && self.closure.is_valid()
    }
}

/// `μ(ω, π) − σ(π) − [δ̂ + π, h]`.
pub fn compatibility_residue(ctx: &PolyContext, omega: &Element, pi: &Element, h: &Element) -> Result<Element> {
    let m = mu_unchecked(ctx, omega, pi)?;
    let dh = ctx.schouten(&(&ctx.delta_hat() + pi), h)?;
    Ok(ctx.truncation().apply(&(&(&m - &sigma(pi)) - &dh)))
}

/// Recompute every residue of a witness from scratch.
pub fn verify_witness(w: &CompatibilityWitness) -> Result<WitnessReport> {
    let ctx = &w.context;
    let residue = compatibility_residue(ctx, &w.omega.total(), &w.pi, &w.h)?;
    let mc_residue = ctx.check_mc(&w.pi)?;
    let closure = check_presymplectic(&ctx.base, &w.omega)?;
    Ok(WitnessReport { residue, mc_residue, closure })
}

fn formal_bound(ctx: &PolyContext) -> Result<u32> {
    ctx.base
        .truncation
        .max_order
        .ok_or_else(|| Error::NonFormal("the solvers need an order-truncated base algebra".into()))
}

/// Polyvector monomials of tangent order `k`, degree `degree`, weight `m`.
fn poly_slice(ctx: &PolyContext, degree: i64, k: u32, max_order: u32) -> Vec<Element> {
    let bound = MonomialBound { max_order, form_order: None, tangent_order: Some((k, k)) };
    let t = ctx.truncation();
    enumerate_monomials(&ctx.generators(), &bound, |mo| mo.degree() == degree && mo.weight() == ctx.m && t.allows(mo))
        .into_iter()
        .map(Element::monomial)
        .collect()
}

/// Form monomials of form order `k`, total degree `degree`, weight `m`.
fn form_slice(ctx: &PolyContext, degree: i64, k: u32, max_order: u32) -> Vec<Element> {
    let bound = MonomialBound { max_order, form_order: Some((k, k)), tangent_order: None };
    let t = &ctx.base.truncation;
    enumerate_monomials(&derham::dr_generators(&ctx.base), &bound, |mo| mo.degree() == degree && mo.weight() == ctx.m && t.allows(mo))
        .into_iter()
        .map(Element::monomial)
        .collect()
}

/// Order-`k` part: tangent order for polyvectors, form order for forms.
fn level(e: &Element, k: u32) -> Element {
    e.filter(|m| {
        let forms = m.form_order();
        let tangents = m.tangent_order();
        if m.generators().any(|g| g.kind() == Kind::Tangent) {
            tangents == k
        } else {
            forms == k
        }
    })
}

/// Solve `Σ cᵢ columnsᵢ = target`, or report the reduced remainder.
fn solve_level(columns: &[Element], target: &Element, k: u32) -> Result<Vec<scalar::Scalar>> {
    match linalg::solve(columns, target) {
        Some(c) => Ok(c),
        None => {
            let mut ech = Echelon::new();
            for c in columns {
                ech.insert(c);
            }
            Err(Error::ObstructionNonzero { level: k, witness: ech.reduce(target) })
        }
    }
}

fn combine(basis: &[Element], coeffs: &[scalar::Scalar]) -> Element {
    let mut out = Element::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        if !num_traits::Zero::is_zero(c) {
            out += &b.scale(c);
        }
    }
    out
}

/// Build `π = π₂ + π₃ + ⋯` and `h` from `ω`, up to tangent order `max_level`.
pub fn symplectic_to_poisson(ctx: &PolyContext, omega: &PreSymplectic, max_level: u32) -> Result<(PoissonStructure, CompatibilityWitness)> {
    let n_order = formal_bound(ctx)?;
    let mut ctx = ctx.clone();
    ctx.max_tangent_order = Some(max_level);
    let ctx = &ctx;
    let t = ctx.truncation();
    let w = omega.total();
    let dh = ctx.delta_hat();
    let mut pi = invert_two_form(ctx, &omega.omega(2))?.pi;
    let mut h = Element::zero();
    for k in 2..=max_level {
        let pi_basis = if k > 2 { poly_slice(ctx, ctx.n + 2, k, n_order) } else { Vec::new() };
        let h_basis = poly_slice(ctx, ctx.n + 1, k, n_order);
        let mc = level(&ctx.check_mc(&pi)?, k);
        let compat = level(&compatibility_residue(ctx, &w, &pi, &h)?, k);
        let target = -(&mc + &compat);
        let base_mu = level(&mu_unchecked(ctx, &w, &pi)?, k);
        let mut columns = Vec::new();
        for b in &pi_basis {
            let with_b = &pi + b;
            let lin_mu = &level(&mu_unchecked(ctx, &w, &with_b)?, k) - &base_mu;
            let col = &(&level(&ctx.schouten(&dh, b)?, k) + &lin_mu) - &b.scale(&int(k as i64 - 1));
            columns.push(t.apply(&col));
        }
        for c in &h_basis {
            columns.push(-level(&ctx.schouten(&dh, c)?, k));
        }
        let coeffs = solve_level(&columns, &target, k)?;
        pi += &combine(&pi_basis, &coeffs[..pi_basis.len()]);
        h += &combine(&h_basis, &coeffs[pi_basis.len()..]);
    }
    let residue = compatibility_residue(ctx, &w, &pi, &h)?;
    let structure = PoissonStructure { residue: ctx.check_mc(&pi)?, pi: pi.clone() };
    let witness = CompatibilityWitness { context: ctx.clone(), omega: omega.clone(), pi, h, residue, max_level };
    Ok((structure, witness))
}

/// Build `ω = ω₂ + ω₃ + ⋯` and `h` from a non-degenerate `π`, up to level `max_level`.
pub fn poisson_to_symplectic(ctx: &PolyContext, pi: &PoissonStructure, max_level: u32) -> Result<(PreSymplectic, CompatibilityWitness)> {
    let n_order = formal_bound(ctx)?;
    let mut ctx = ctx.clone();
    ctx.max_tangent_order = Some(max_level);
    let ctx = &ctx;
    let pi = ctx.truncation().apply(&pi.pi);
    let dh = ctx.delta_hat();
    let delta = derham::forms_delta(&ctx.base);
    let bt = &ctx.base.truncation;
    let mut omega = invert_bivector(ctx, &pi)?;
    let mut h = Element::zero();
    for k in 2..=max_level {
        let w_basis = if k > 2 { form_slice(ctx, ctx.n + 2, k, n_order) } else { Vec::new() };
        let h_basis = poly_slice(ctx, ctx.n + 1, k, n_order);
        let closure = level(&bt.apply(&derham::dr_differential(&ctx.base, &omega)?), k);
        let compat = level(&compatibility_residue(ctx, &omega, &pi, &h)?, k);
        let target = -(&closure + &compat);
        let mut columns = Vec::new();
        for b in &w_basis {
            let col = &level(&delta.apply_truncated(b, bt)?, k) + &level(&mu_unchecked(ctx, b, &pi)?, k);
            columns.push(col);
        }
        for c in &h_basis {
            columns.push(-level(&ctx.schouten(&dh, c)?, k));
        }
        let coeffs = solve_level(&columns, &target, k)?;
        omega += &combine(&w_basis, &coeffs[..w_basis.len()]);
        h += &combine(&h_basis, &coeffs[w_basis.len()..]);
    }
    let omega = PreSymplectic::from_total(ctx.n, ctx.m, &omega, max_level);
    let residue = compatibility_residue(ctx, &omega.total(), &pi, &h)?;
    let witness = CompatibilityWitness { context: ctx.clone(), omega: omega.clone(), pi, h, residue, max_level };
    Ok((omega, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Truncation;
    use crate::cdga::{poly_gen, FreeWCDGA};

    fn canonical() -> PolyContext {
        PolyContext::new(FreeWCDGA::new(vec![poly_gen("p"), poly_gen("x")]), 0, 0, None)
    }

    fn form(ctx: &PolyContext, name: &str) -> Element {
        Element::generator(&ctx.base.generator(name).unwrap().differential())
    }

    #[test]
    fn sigma_scales_by_arity() {
        let a = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y"), poly_gen("z")]);
        let c = PolyContext::new(a, 0, 0, None);
        let p2 = c.xi("x").mul(&c.xi("y"));
        let p3 = c.xi("x").mul(&c.xi("y")).mul(&c.xi("z"));
        assert_eq!(sigma(&p2), p2);
        assert_eq!(sigma(&(&p2 + &p3)), &p2 + &p3.scale(&int(2)));
        assert!(sigma(&Element::zero()).is_zero());
    }

    #[test]
    fn canonical_pair() {
        let c = canonical();
        let w = form(&c, "p").mul(&form(&c, "x"));
        let pi = invert_two_form(&c, &w).unwrap();
        assert!(pi.pi == c.xi("p").mul(&c.xi("x")) || pi.pi == c.xi("x").mul(&c.xi("p")));
        assert!(pi.is_certified());
        assert_eq!(invert_bivector(&c, &pi.pi).unwrap(), w);
        assert_eq!(mu(&c, &w, &pi.pi).unwrap(), sigma(&pi.pi));
        assert_eq!(mu(&c, &c.x("x"), &pi.pi).unwrap(), c.x("x"));
    }

    #[test]
    fn degenerate_inputs() {
        let c = canonical();
        let w = form(&c, "p").mul(&form(&c, "x")).mul(&c.x("x"));
        assert!(matches!(invert_two_form(&c, &w), Err(Error::NotInvertible)));
        assert!(matches!(invert_bivector(&c, &Element::zero()), Err(Error::NotInvertible)));
    }

    #[test]
    fn strict_solver_stops_at_level_two() {
        let mut c = canonical();
        c.base.truncation = Truncation::order(3);
        let w = PreSymplectic::new(0, 0, form(&c, "p").mul(&form(&c, "x")), 4);
        let (pi, wit) = symplectic_to_poisson(&c, &w, 4).unwrap();
        assert_eq!(pi.pi.tangent_part(2), pi.pi);
        assert!(wit.h.is_zero());
        assert!(verify_witness(&wit).unwrap().passed());
        let mut tampered = wit.clone();
        tampered.h = c.x("x").mul(&c.xi("x"));
        assert!(!verify_witness(&tampered).unwrap().passed());
        let (omega, wit2) = poisson_to_symplectic(&c, &pi, 4).unwrap();
        assert_eq!(omega.total(), w.omega(2));
        assert!(verify_witness(&wit2).unwrap().passed());
    }

    #[test]
    fn solvers_refuse_untruncated_algebras() {
        let c = canonical();
        let w = PreSymplectic::new(0, 0, form(&c, "p").mul(&form(&c, "x")), 4);
        assert!(matches!(symplectic_to_poisson(&c, &w, 3), Err(Error::NonFormal(_))));
    }
}
