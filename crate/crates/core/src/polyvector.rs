//! Shifted polyvectors `A ⊗ Sym(Ξ)` with the Schouten–Nijenhuis bracket.
//!
//! The tangent dual `ξ_a` of `x_a` has degree `n + 1 − |x_a|` and weight
//! `m − wt(x_a)`. With `s = −(n + 1)` the bracket has degree `s` and weight
//! `−m`, and `[P, −]` is a derivation of degree `|P| + s`. On generators,
//! `[ξ_a, −] = ∂/∂x_a` and `[x_a, −] = ε_a ∂/∂ξ_a` with
//! `ε_a = −(−1)^{|x_a|(1+s)}`, which gives `[ξ_a, x_a] = 1`.

use std::collections::BTreeMap;

use crate::algebra::{self, Derivation, Element, Generator, Kind, Truncation};
use crate::cdga::FreeWCDGA;
use crate::derham::{strict_block_test, StrictReport};
use crate::error::{Error, Result};
use crate::linalg::ElementMatrix;
use crate::scalar::{self, ratio};

/// The polyvector algebra of a base algebra with shift `n` and weight `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyContext {
    pub base: FreeWCDGA,
    pub n: i64,
    pub m: i64,
    pub tangents: Vec<Generator>,
    pub max_tangent_order: Option<u32>,
}

/// A Maurer–Cartan bivector with its residue certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    pub pi: Element,
    pub residue: Element,
}

impl PoissonStructure {
    pub fn is_certified(&self) -> bool {
        self.residue.is_zero()
    }
}

/// Strict non-degeneracy of the bivector part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub strict: StrictReport,
    pub level: Option<u32>,
}

impl NondegeneracyReport {
    pub fn passed(&self) -> bool {
        self.level == Some(2) && self.strict.passed
    }
}

impl PolyContext {
    pub fn new(base: FreeWCDGA, n: i64, m: i64, max_tangent_order: Option<u32>) -> Self {
        let tangents = base
            .generators
            .iter()
            .map(|g| Generator::with_kind(Kind::Tangent, g.name(), n + 1 - g.degree(), m - g.weight()))
            .collect();
        PolyContext { base, n, m, tangents, max_tangent_order }
    }

    pub fn shift(&self) -> i64 {
        -(self.n + 1)
    }

    pub fn truncation(&self) -> Truncation {
        let mut t = self.base.truncation.clone();
        t.max_tangent_order = self.max_tangent_order;
        t
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = self.base.generators.clone();
        gens.extend(self.tangents.iter().cloned());
        gens
    }

    pub fn x(&self, name: &str) -> Element {
        self.base.gen(name)
    }

    pub fn xi(&self, name: &str) -> Element {
        Element::generator(self.tangent(name).unwrap_or_else(|| panic!("no tangent for `{name}`")))
    }

    pub fn tangent(&self, name: &str) -> Option<&Generator> {
        self.tangents.iter().find(|t| t.name() == name)
    }

    fn base_of(&self, t: &Generator) -> &Generator {
        self.base.generators.iter().find(|g| g.name() == t.name()).expect("tangent has a base generator")
    }

    fn tangent_of(&self, g: &Generator) -> &Generator {
        self.tangents.iter().find(|t| t.name() == g.name()).expect("base generator has a tangent")
    }

    fn owns(&self, g: &Generator) -> bool {
        match g.kind() {
            Kind::Base => self.base.generators.contains(g),
            Kind::Tangent => self.tangents.contains(g),
            Kind::Form => false,
        }
    }

    pub fn check_member(&self, e: &Element) -> Result<()> {
        match e.generators().into_iter().find(|g| !self.owns(g)) {
            Some(_) => Err(Error::ContextMismatch),
            None => Ok(()),
        }
    }

    /// `[g, e]` for a generator `g`.
    fn hamiltonian(&self, g: &Generator, e: &Element) -> Element {
        match g.kind() {
            Kind::Tangent => algebra::partial(self.base_of(g), e),
            _ => {
                let eps = -scalar::sign(g.degree() * (1 + self.shift()));
                algebra::partial(self.tangent_of(g), e).scale(&eps)
            }
        }
    }

    /// The Schouten bracket `[P, Q]`.
    pub fn schouten(&self, p: &Element, q: &Element) -> Result<Element> {
        self.check_member(p)?;
        self.check_member(q)?;
        let s = self.shift();
        let t = self.truncation();
        let gens = q.generators();
        let mut out = Element::zero();
        for (deg, part) in p.by_degree() {
            let k = deg + s;
            let mut images = BTreeMap::new();
            for g in &gens {
                let sign = -scalar::sign(k * (g.degree() + s));
                images.insert(g.clone(), self.hamiltonian(g, &part).scale(&sign));
            }
            out += &algebra::leibniz(k, q, &t, |g| Ok(images.get(g).cloned()))?;
        }
        Ok(out)
    }

    /// `δ̂ = Σ δ(x_a) ξ_a`, with `[δ̂, −]` extending `δ`.
    pub fn delta_hat(&self) -> Element {
        let mut out = Element::zero();
        for (g, t) in self.base.generators.iter().zip(&self.tangents) {
            if let Some(img) = self.base.differential.image(g) {
                out += &img.mul(&Element::generator(t));
            }
        }
        out
    }

    /// `[δ̂, π] + ½[π, π]`.
    pub fn check_mc(&self, pi: &Element) -> Result<Element> {
        let a = self.schouten(&self.delta_hat(), pi)?;
        let b = self.schouten(pi, pi)?;
        Ok(self.truncation().apply(&(&a + &b.scale(&ratio(1, 2)))))
    }

    pub fn certify(&self, pi: &Element) -> Result<PoissonStructure> {
        let residue = self.check_mc(pi)?;
        if !residue.is_zero() {
            return Err(Error::NotMC { residue });
        }
        Ok(PoissonStructure { pi: pi.clone(), residue })
    }

    /// `P^{ab} = ∂_{ξ_a} ∂_{ξ_b} π`, so that `π₂ = ½ Σ ξ_b ξ_a P^{ab}`.
    pub fn bivector_matrix(&self, pi: &Element) -> ElementMatrix {
        let pi2 = pi.tangent_part(2);
        let entries = self
            .tangents
            .iter()
            .map(|ta| self.tangents.iter().map(|tb| algebra::partial(ta, &algebra::partial(tb, &pi2))).collect())
            .collect();
        ElementMatrix::new(entries)
    }

    /// Strict non-degeneracy of `π₂` at the augmentation.
    pub fn check_nondegenerate(&self, pi: &Element) -> Result<NondegeneracyReport> {
        let aug = self.bivector_matrix(pi).augmentation();
        let (n, m) = (self.n, self.m);
        let strict = strict_block_test(&self.base.generators, &aug, |z, w| (n - z, m - w))?;
        Ok(NondegeneracyReport { strict, level: filtration_level(pi) })
    }

    /// `D_π = [δ̂ + π, −]` as a derivation on base and tangent generators.
    pub fn twisted_complex(&self, pi: &Element) -> Result<Derivation> {
        let residue = self.check_mc(pi)?;
        if !residue.is_zero() {
            return Err(Error::NotMC { residue });
        }
        self.twisted_unchecked(pi)
    }

    pub(crate) fn twisted_unchecked(&self, pi: &Element) -> Result<Derivation> {
        let ham = &self.delta_hat() + pi;
        let mut out = Derivation::new(1, 0);
        for g in self.generators() {
            out.set(&g, self.schouten(&ham, &Element::generator(&g))?);
        }
        Ok(out)
    }

    pub fn apply(&self, d: &Derivation, e: &Element) -> Result<Element> {
        d.apply_truncated(e, &self.truncation())
    }
}

/// Least tangent order among the terms; `None` for zero.
pub fn filtration_level(p: &Element) -> Option<u32> {
    p.terms().map(|(m, _)| m.tangent_order()).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::poly_gen;

    fn canonical(n: i64) -> PolyContext {
        let a = FreeWCDGA::new(vec![Generator::new("p", n, 0), poly_gen("x")]);
        PolyContext::new(a, n, 0, None)
    }

    #[test]
    fn generating_relation() {
        for n in -2..=2 {
            let c = canonical(n);
            for name in ["p", "x"] {
                assert_eq!(c.schouten(&c.xi(name), &c.x(name)).unwrap(), Element::one());
            }
            assert!(c.schouten(&c.xi("p"), &c.x("x")).unwrap().is_zero());
            assert!(c.schouten(&c.x("p"), &c.x("x")).unwrap().is_zero());
            assert!(c.schouten(&c.xi("p"), &c.xi("x")).unwrap().is_zero());
        }
    }

    #[test]
    fn bivector_applied_to_pair() {
        // [[π, f], g] is the bidifferential operator of π applied to (f, g).
        let c = canonical(0);
        let pi = c.xi("p").mul(&c.xi("x"));
        let (p, x) = (c.x("p"), c.x("x"));
        let f = p.mul(&x);
        let g = x.pow(2);
        let lhs = c.schouten(&c.schouten(&pi, &f).unwrap(), &g).unwrap();
        // oracle: ±(∂_p f ∂_x g − ∂_x f ∂_p g) for even coordinates
        let dp = |e: &Element| algebra::partial(c.base.generator("p").unwrap(), e);
        let dx = |e: &Element| algebra::partial(c.base.generator("x").unwrap(), e);
        let oracle = &dp(&f).mul(&dx(&g)) - &dx(&f).mul(&dp(&g));
        assert!(lhs == oracle || lhs == -oracle.clone(), "{lhs} vs {oracle}");
        assert!(!lhs.is_zero());
    }

    #[test]
    fn filtration_levels() {
        let c = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y"), poly_gen("z")]);
        let ctx = PolyContext::new(c, 1, 0, None);
        assert_eq!(filtration_level(&ctx.x("x")), Some(0));
        let e = &ctx.xi("x").mul(&ctx.xi("y")) + &ctx.x("x").mul(&ctx.xi("x")).mul(&ctx.xi("y")).mul(&ctx.xi("z"));
        assert_eq!(filtration_level(&e), Some(2));
        assert_eq!(filtration_level(&Element::zero()), None);
    }

    #[test]
    fn canonical_bivector_is_poisson() {
        let c = canonical(0);
        let pi = c.xi("p").mul(&c.xi("x"));
        assert!(c.check_mc(&pi).unwrap().is_zero());
        assert!(c.check_nondegenerate(&pi).unwrap().passed());
        let d = c.twisted_complex(&pi).unwrap();
        let dx = c.apply(&d, &c.x("x")).unwrap();
        assert!(dx == c.xi("p") || dx == -c.xi("p"));
        let a3 = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y"), poly_gen("z")]);
        let c3 = PolyContext::new(a3, 0, 0, None);
        let tri = c3.xi("x").mul(&c3.xi("y")).mul(&c3.xi("z"));
        assert!(!c3.check_nondegenerate(&tri).unwrap().passed());
    }

    #[test]
    fn broken_jacobi_gives_residue() {
        let a = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y"), poly_gen("z")]);
        let c = PolyContext::new(a, 0, 0, None);
        // {x,y} = z, {y,z} = x, {z,x} = y is Poisson; {x,y} = y, {y,z} = x is not
        let br = |u: &str, v: &str, w: &Element| c.xi(u).mul(&c.xi(v)).mul(w);
        let good = &(&br("x", "y", &c.x("z")) + &br("y", "z", &c.x("x"))) + &br("z", "x", &c.x("y"));
        assert!(c.check_mc(&good).unwrap().is_zero());
        let bad = &br("x", "y", &c.x("y")) + &br("y", "z", &c.x("x"));
        assert!(!c.check_mc(&bad).unwrap().is_zero());
    }

    #[test]
    fn context_mismatch() {
        let c = canonical(0);
        let other = Element::generator(&poly_gen("q"));
        assert!(matches!(c.schouten(&other, &c.x("x")), Err(Error::ContextMismatch)));
    }

    #[test]
    fn delta_hat_extends_differential() {
        let a = FreeWCDGA::new(vec![poly_gen("x"), Generator::new("y", -1, 0)]);
        let x2 = a.gen("x").pow(2);
        let a = a.with_differential("y", x2.clone());
        let c = PolyContext::new(a, 1, 0, None);
        let dh = c.delta_hat();
        assert_eq!(dh.degree(), Some(c.n + 2));
        assert_eq!(c.schouten(&dh, &c.x("y")).unwrap(), x2);
        assert!(c.schouten(&dh, &dh).unwrap().is_zero());
    }
}
