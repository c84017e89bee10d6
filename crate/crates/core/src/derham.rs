//! Kähler forms, the de Rham differential, and pre-symplectic, symplectic,
//! isotropic and Lagrangian checks.
//!
//! A form `a·dx₁⋯dxₚ` lives in the same free algebra as its coefficients, with
//! `dx` in degree `|x| + 1`. Total de Rham degree is then just the degree of a
//! monomial and form order is the number of `dx` factors. The internal
//! differential is extended to forms by `δ(dx) = −d(δx)`, which makes it
//! anticommute with `d`.

use std::collections::BTreeMap;

use crate::algebra::{self, Derivation, Element, Generator, Kind, Monomial, Truncation};
use crate::cdga::{enumerate_monomials, FreeWCDGA, MonomialBound};
use crate::error::{Error, Result};
use crate::linalg::{self, ElementMatrix, Echelon, Matrix};
use crate::polyvector::PolyContext;
use crate::scalar::{self, Scalar};

/// Form generators `dx` for the generators of `a`.
pub fn form_generators(a: &FreeWCDGA) -> Vec<Generator> {
    a.generators.iter().map(Generator::differential).collect()
}

/// Base and form generators together.
pub fn dr_generators(a: &FreeWCDGA) -> Vec<Generator> {
    let mut gens = a.generators.clone();
    gens.extend(form_generators(a));
    gens
}

/// The de Rham differential `x ↦ dx`, `dx ↦ 0`.
pub fn d(e: &Element) -> Element {
    d_truncated(e, &Truncation::none())
}

pub fn d_truncated(e: &Element, t: &Truncation) -> Element {
    algebra::leibniz(1, e, t, |g| Ok((g.kind() == Kind::Base).then(|| Element::generator(&g.differential())))).expect("infallible")
}

/// The internal differential of `a` extended to forms.
pub fn forms_delta(a: &FreeWCDGA) -> Derivation {
    let mut out = Derivation::new(1, 0);
    for g in &a.generators {
        let img = a.differential.image(g).cloned().unwrap_or_default();
        out.set(&g.differential(), -d(&img));
        out.set(g, img);
    }
    out
}

/// `e` restricted to form order at most `max_form_order` and to the algebra's truncation.
fn cut(a: &FreeWCDGA, e: &Element, max_form_order: Option<u32>) -> Element {
    let e = a.truncation.apply(e);
    match max_form_order {
        Some(p) => e.filter(|m| m.form_order() <= p),
        None => e,
    }
}

/// The total differential `d + δ`.
pub fn dr_differential(a: &FreeWCDGA, e: &Element) -> Result<Element> {
    let delta = forms_delta(a).apply_truncated(e, &a.truncation)?;
    Ok(&d_truncated(e, &a.truncation) + &delta)
}

/// A weighted `n`-shifted pre-symplectic structure `ω = Σ ωᵢ`.
///
/// `ωᵢ` has form order `i` and total degree `n + 2`; forms above
/// `max_form_order` are truncated away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSymplectic {
    pub n: i64,
    pub m: i64,
    pub forms: BTreeMap<u32, Element>,
    pub max_form_order: u32,
}

impl PreSymplectic {
    pub fn new(n: i64, m: i64, omega2: Element, max_form_order: u32) -> Self {
        PreSymplectic { n, m, forms: BTreeMap::from([(2, omega2)]), max_form_order }
    }

    /// Split a sum of forms into components by form order.
    pub fn from_total(n: i64, m: i64, total: &Element, max_form_order: u32) -> Self {
        let mut forms = BTreeMap::new();
        for p in 0..=max_form_order {
            let part = total.form_part(p);
            if !part.is_zero() {
                forms.insert(p, part);
            }
        }
        PreSymplectic { n, m, forms, max_form_order }
    }

    pub fn omega(&self, i: u32) -> Element {
        self.forms.get(&i).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> Element {
        let mut out = Element::zero();
        for f in self.forms.values() {
            out += f;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormViolation {
    pub what: String,
    pub witness: Element,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresymplecticReport {
    pub violations: Vec<FormViolation>,
}

impl PresymplecticReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Homogeneity and the closure ladder `δω₂ = 0`, `dωᵢ + δωᵢ₊₁ = 0`.
pub fn check_presymplectic(a: &FreeWCDGA, w: &PreSymplectic) -> Result<PresymplecticReport> {
    let mut report = PresymplecticReport::default();
    for (&i, f) in &w.forms {
        let bad = f.terms().any(|(m, _)| {
            m.form_order() != i || m.degree() != w.n + 2 || m.weight() != w.m || m.tangent_order() != 0
        });
        if i < 2 || bad {
            report.violations.push(FormViolation { what: format!("component {i} is not homogeneous"), witness: f.clone() });
        }
    }
    let delta = forms_delta(a);
    for p in 2..=w.max_form_order {
        let lower = if p > 2 { d_truncated(&w.omega(p - 1), &a.truncation) } else { Element::zero() };
        let upper = delta.apply_truncated(&w.omega(p), &a.truncation)?;
        let residue = &lower + &upper;
        if !residue.is_zero() {
            report.violations.push(FormViolation { what: format!("closure fails at form order {p}"), witness: residue });
        }
    }
    Ok(report)
}

/// `M_ab = ∂_{dx_a} ∂_{dx_b} ω₂`, so that `ω₂ = ½ Σ dx_b dx_a M_ab`.
pub fn two_form_sharp(a: &FreeWCDGA, omega2: &Element) -> ElementMatrix {
    let forms = form_generators(a);
    let entries = forms
        .iter()
        .map(|ga| forms.iter().map(|gb| algebra::partial(ga, &algebra::partial(gb, omega2))).collect())
        .collect();
    ElementMatrix::new(entries)
}

/// One block of a strict non-degeneracy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub row_class: (i64, i64),
    pub col_class: (i64, i64),
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub determinant: Scalar,
}

/// Outcome of a strict invertibility test at the augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictReport {
    pub blocks: Vec<Block>,
    pub determinant: Scalar,
    pub strict: bool,
    pub passed: bool,
}

/// Block determinant test of a constant matrix indexed by generators. The
/// generators of class `(z, w)` pair with those of class `partner(z, w)`.
pub fn strict_block_test(gens: &[Generator], aug: &Matrix, partner: impl Fn(i64, i64) -> (i64, i64)) -> Result<StrictReport> {
    let mut classes: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        classes.entry((g.degree(), g.weight())).or_default().push(i);
    }
    let mut blocks = Vec::new();
    for (&class, rows) in &classes {
        let col_class = partner(class.0, class.1);
        let cols = classes.get(&col_class).cloned().unwrap_or_default();
        if cols.len() != rows.len() {
            return Err(Error::NonSquareBlock { rows: rows.len(), cols: cols.len() });
        }
        let sub = Matrix::from_rows(rows.iter().map(|&r| cols.iter().map(|&c| aug.get(r, c).clone()).collect()).collect());
        blocks.push(Block {
            row_class: class,
            col_class,
            rows: rows.iter().map(|&r| gens[r].label()).collect(),
            cols: cols.iter().map(|&c| gens[c].label()).collect(),
            determinant: sub.determinant(),
        });
    }
    let passed = blocks.iter().all(|b| !num_traits::Zero::is_zero(&b.determinant));
    Ok(StrictReport { blocks, determinant: aug.determinant(), strict: true, passed })
}

/// Strict non-degeneracy of `ω₂`: every block of its sharp matrix is invertible at the augmentation.
pub fn check_symplectic_strict(a: &FreeWCDGA, w: &PreSymplectic) -> Result<StrictReport> {
    let m = two_form_sharp(a, &w.omega(2));
    let (n, wt) = (w.n, w.m);
    strict_block_test(&a.generators, &m.augmentation(), |z, u| (n - z, wt - u))
}

/// A map `f: A → B` with an isotropic structure `λ` for `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicPair {
    pub source: FreeWCDGA,
    pub target: FreeWCDGA,
    pub map: BTreeMap<Generator, Element>,
    pub omega: PreSymplectic,
    pub lambda: Element,
}

impl IsotropicPair {
    fn image(&self, g: &Generator) -> Element {
        self.map.get(g).cloned().unwrap_or_else(|| Element::generator(g))
    }

    /// Pullback of forms along the map.
    pub fn pullback(&self, e: &Element) -> Element {
        let mut images = BTreeMap::new();
        for g in &self.source.generators {
            let img = self.image(g);
            images.insert(g.differential(), d(&img));
            images.insert(g.clone(), img);
        }
        cut(&self.target, &e.substitute(&images, &self.target.truncation), Some(self.omega.max_form_order))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicReport {
    pub residue: Element,
    pub presymplectic: PresymplecticReport,
}

impl IsotropicReport {
    pub fn passed(&self) -> bool {
        self.residue.is_zero() && self.presymplectic.is_valid()
    }
}

/// The cone cocycle condition `f*ω = (d + δ)λ` together with closure of `ω`.
pub fn check_isotropic(pair: &IsotropicPair) -> Result<IsotropicReport> {
    pair.source.check_map(&pair.target, &pair.map)?;
    let presymplectic = check_presymplectic(&pair.source, &pair.omega)?;
    let pulled = pair.pullback(&pair.omega.total());
    let dl = cut(&pair.target, &dr_differential(&pair.target, &pair.lambda)?, Some(pair.omega.max_form_order));
    let residue = (&pulled - &dl).filter(|m| m.form_order() >= 2);
    Ok(IsotropicReport { residue, presymplectic })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianReport {
    pub isotropic: IsotropicReport,
    pub jacobian_rank: usize,
    pub sharp_rank: usize,
    pub composite_zero: bool,
    pub passed: bool,
}

/// Strict Lagrangian test at the augmentation: `T_B → T_A|_B → Ω¹_B` must be
/// short exact, with the first map the tangent map of `f` and the second the
/// restriction of `ω₂^♯`. Presentations are assumed minimal.
pub fn check_lagrangian_strict(pair: &IsotropicPair) -> Result<LagrangianReport> {
    let isotropic = check_isotropic(pair)?;
    let (a, b) = (&pair.source, &pair.target);
    if a.generators.len() != 2 * b.generators.len() {
        return Err(Error::NonSquareBlock { rows: a.generators.len(), cols: 2 * b.generators.len() });
    }
    let jac = Matrix::from_rows(
        a.generators
            .iter()
            .map(|ga| b.generators.iter().map(|gb| algebra::partial(gb, &pair.image(ga)).constant_term()).collect())
            .collect(),
    );
    let omega2 = pair.omega.omega(2);
    let forms_b = form_generators(b);
    let phi_cols: Vec<Vec<Scalar>> = form_generators(a)
        .iter()
        .map(|dxa| {
            let one_form = pair.pullback(&algebra::partial(dxa, &omega2));
            forms_b.iter().map(|dy| one_form.coefficient(&Monomial::generator(dy))).collect()
        })
        .collect();
    let phi = Matrix::from_rows(phi_cols).transpose();
    let composite_zero = phi.mul(&jac).is_zero();
    let jacobian_rank = jac.rank();
    let sharp_rank = phi.rank();
    let nb = b.generators.len();
    let passed = isotropic.passed() && composite_zero && jacobian_rank == nb && sharp_rank == nb;
    Ok(LagrangianReport { isotropic, jacobian_rank, sharp_rank, composite_zero, passed })
}

/// Bounds for de Rham class computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassBounds {
    pub max_form_order: u32,
    pub max_order: u32,
}

/// Degree-`(n+2)` cohomology of `𝒲_m F²DR(A)` in the quotient by form order
/// above `max_form_order` and polynomial order above `max_order`.
#[derive(Clone, Debug)]
pub struct PresymplecticClasses {
    pub n: i64,
    pub m: i64,
    pub bounds: ClassBounds,
    pub representatives: Vec<Element>,
    boundaries: Echelon,
    algebra: FreeWCDGA,
}

impl PresymplecticClasses {
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    fn project(&self, e: &Element) -> Element {
        e.filter(|m| m.order() <= self.bounds.max_order && m.form_order() <= self.bounds.max_form_order && m.form_order() >= 2)
    }

    pub fn is_cocycle(&self, e: &Element) -> Result<bool> {
        let de = dr_differential(&self.algebra, &self.project(e))?;
        Ok(self.project(&de).is_zero())
    }

    /// Whether `e` is a coboundary in the truncated complex.
    pub fn is_exact(&self, e: &Element) -> bool {
        self.boundaries.contains(&self.project(e))
    }

    pub fn same_class(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.is_cocycle(a)? && self.is_cocycle(b)? && self.is_exact(&(a - b)))
    }
}

pub fn presymplectic_classes(a: &FreeWCDGA, n: i64, m: i64, bounds: ClassBounds) -> Result<PresymplecticClasses> {
    let gens = dr_generators(a);
    let bound = MonomialBound { max_order: bounds.max_order, form_order: Some((2, bounds.max_form_order)), tangent_order: None };
    let slice = |deg: i64| -> Vec<Element> {
        enumerate_monomials(&gens, &bound, |mo| mo.degree() == deg && mo.weight() == m && a.truncation.allows(mo))
            .into_iter()
            .map(Element::monomial)
            .collect()
    };
    let project = |e: &Element| e.filter(|mo| mo.order() <= bounds.max_order && mo.form_order() <= bounds.max_form_order);
    let top = slice(n + 2);
    let images = top.iter().map(|e| dr_differential(a, e).map(|x| project(&x))).collect::<Result<Vec<_>>>()?;
    let cycles = linalg::kernel(&top, &images);
    let mut boundaries = Echelon::new();
    for s in slice(n + 1) {
        boundaries.insert(&project(&dr_differential(a, &s)?));
    }
    let mut ech = boundaries.clone();
    let representatives = cycles.into_iter().filter(|z| ech.insert(z)).collect();
    Ok(PresymplecticClasses { n, m, bounds, representatives, boundaries, algebra: a.clone() })
}

/// The twisted cotangent algebra `Sym_B(T_B{−m}[−n])` with differential
/// `[δ̂ + f, −]` and its canonical form `Σ dp_a dx_a`.
///
/// Each `p_a` has degree `n − |x_a|` and weight `m − wt(x_a)`; the twist `f`
/// must be a cocycle of degree `n + 1` and weight `m`.
pub fn generate_twisted_cotangent(b: &FreeWCDGA, f: &Element, n: i64, m: i64) -> Result<(FreeWCDGA, PreSymplectic)> {
    if !b.delta(f)?.is_zero() {
        return Err(Error::NotClosed(f.clone()));
    }
    if f.terms().any(|(mo, _)| mo.degree() != n + 1 || mo.weight() != m) {
        return Err(Error::InvalidInput(format!("twist {f} must have degree {} and weight {m}", n + 1)));
    }
    let ctx = PolyContext::new(b.clone(), n - 1, m, None);
    let ham = &ctx.delta_hat() + f;
    let rename: BTreeMap<Generator, Element> = ctx
        .tangents
        .iter()
        .map(|t| (t.clone(), Element::generator(&cotangent_generator(t))))
        .collect();
    let mut gens = b.generators.clone();
    gens.extend(ctx.tangents.iter().map(cotangent_generator));
    let mut out = FreeWCDGA::new(gens).with_truncation(b.truncation.clone());
    for g in b.generators.iter().chain(ctx.tangents.iter()) {
        let img = ctx.schouten(&ham, &Element::generator(g))?;
        let target = if g.kind() == Kind::Tangent { cotangent_generator(g) } else { g.clone() };
        out.differential.set(&target, img.substitute(&rename, &Truncation::none()));
    }
    let mut omega = Element::zero();
    for (x, t) in b.generators.iter().zip(&ctx.tangents) {
        let p = cotangent_generator(t);
        omega += &Element::generator(&p.differential()).mul(&Element::generator(&x.differential()));
    }
    Ok((out, PreSymplectic::new(n, m, omega, 2)))
}

/// Name of the cotangent coordinate dual to a base generator.
pub fn cotangent_name(base: &str) -> String {
    format!("p_{base}")
}

fn cotangent_generator(t: &Generator) -> Generator {
    Generator::new(&cotangent_name(t.name()), t.degree(), t.weight())
}

/// Scalar sign helper shared with callers assembling explicit forms.
pub fn koszul(a: i64, b: i64) -> Scalar {
    scalar::sign(a * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::poly_gen;
    use crate::scalar::int;

    fn cotangent() -> FreeWCDGA {
        FreeWCDGA::new(vec![poly_gen("p"), poly_gen("x")])
    }

    fn dg(a: &FreeWCDGA, name: &str) -> Element {
        Element::generator(&a.generator(name).unwrap().differential())
    }

    #[test]
    fn d_examples() {
        let a = FreeWCDGA::new(vec![poly_gen("x"), Generator::new("y", 1, 0)]);
        let (x, y) = (a.gen("x"), a.gen("y"));
        assert_eq!(d(&x.pow(2)), x.mul(&dg(&a, "x")).scale(&int(2)));
        assert!(d(&Element::one()).is_zero());
        // odd y: d(y x) = dy x − y dx
        let expected = &dg(&a, "y").mul(&x) - &y.mul(&dg(&a, "x"));
        assert_eq!(d(&y.mul(&x)), expected);
        assert!(d(&d(&y.mul(&x).mul(&x))).is_zero());
    }

    #[test]
    fn total_differential_squares_to_zero() {
        let a = FreeWCDGA::new(vec![poly_gen("x"), Generator::new("y", -1, 0)]);
        let x2 = a.gen("x").pow(2);
        let a = a.with_differential("y", x2);
        let e = &a.gen("x").mul(&dg(&a, "y")) + &a.gen("y").mul(&dg(&a, "x")).mul(&dg(&a, "x"));
        let de = dr_differential(&a, &e).unwrap();
        assert!(dr_differential(&a, &de).unwrap().is_zero());
    }

    #[test]
    fn sharp_and_strict_on_cotangent() {
        let a = cotangent();
        let w = PreSymplectic::new(0, 0, dg(&a, "p").mul(&dg(&a, "x")), 3);
        assert!(check_presymplectic(&a, &w).unwrap().is_valid());
        let m = two_form_sharp(&a, &w.omega(2)).augmentation();
        assert!(m.get(0, 0).is_integer() && num_traits::Zero::is_zero(m.get(0, 0)));
        assert_eq!(m.get(0, 1).clone() * m.get(1, 0).clone(), int(-1));
        let r = check_symplectic_strict(&a, &w).unwrap();
        assert!(r.passed);
        let degenerate = PreSymplectic::new(0, 0, a.gen("x").mul(&w.omega(2)), 3);
        assert!(!check_symplectic_strict(&a, &degenerate).unwrap().passed);
        assert!(two_form_sharp(&a, &Element::zero()).augmentation().is_zero());
    }

    #[test]
    fn non_closed_two_form_fails() {
        let a = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y"), poly_gen("z")]);
        let w = PreSymplectic::new(0, 0, a.gen("z").mul(&dg(&a, "x")).mul(&dg(&a, "y")), 3);
        let r = check_presymplectic(&a, &w).unwrap();
        assert!(!r.is_valid());
    }

    #[test]
    fn zero_section_is_lagrangian() {
        let a = cotangent();
        let b = FreeWCDGA::new(vec![poly_gen("x")]);
        let w = PreSymplectic::new(0, 0, dg(&a, "p").mul(&dg(&a, "x")), 3);
        let map = BTreeMap::from([(a.generator("p").unwrap().clone(), Element::zero())]);
        let pair = IsotropicPair { source: a, target: b, map, omega: w, lambda: Element::zero() };
        assert!(check_isotropic(&pair).unwrap().passed());
        assert!(check_lagrangian_strict(&pair).unwrap().passed);
    }

    #[test]
    fn graph_of_differential_is_lagrangian() {
        let a = cotangent();
        let b = FreeWCDGA::new(vec![poly_gen("x")]);
        let x = b.gen("x");
        // potential g = x³ + 2x², so p ↦ g' = 3x² + 4x
        let gprime = &x.pow(2).scale(&int(3)) + &x.scale(&int(4));
        let w = PreSymplectic::new(0, 0, dg(&a, "p").mul(&dg(&a, "x")), 3);
        let map = BTreeMap::from([(a.generator("p").unwrap().clone(), gprime)]);
        let pair = IsotropicPair { source: a.clone(), target: b.clone(), map, omega: w.clone(), lambda: Element::zero() };
        assert!(check_lagrangian_strict(&pair).unwrap().passed);
        // the identity on Q[x,p] is not isotropic for dp dx
        let id = IsotropicPair { source: a.clone(), target: a, map: BTreeMap::new(), omega: w, lambda: Element::zero() };
        assert!(!check_isotropic(&id).unwrap().passed());
    }

    #[test]
    fn classes_of_cotangent_form() {
        let a = cotangent();
        let w = dg(&a, "p").mul(&dg(&a, "x"));
        let classes = presymplectic_classes(&a, 0, 0, ClassBounds { max_form_order: 3, max_order: 4 }).unwrap();
        assert!(classes.is_cocycle(&w).unwrap());
        assert!(!classes.is_exact(&w));
        // with |p| = −1 there are 2-forms of degree 0 to perturb by
        let a = FreeWCDGA::new(vec![Generator::new("p", -1, 0), poly_gen("x")]);
        let w = dg(&a, "p").mul(&dg(&a, "x"));
        let classes = presymplectic_classes(&a, -1, 0, ClassBounds { max_form_order: 3, max_order: 4 }).unwrap();
        assert!(!classes.is_exact(&w));
        let eta = a.gen("x").mul(&dg(&a, "p")).mul(&dg(&a, "p"));
        let shifted = &w + &dr_differential(&a, &eta).unwrap();
        assert!(classes.same_class(&w, &shifted).unwrap());
        let one = FreeWCDGA::new(vec![poly_gen("x")]);
        assert_eq!(presymplectic_classes(&one, 0, 0, ClassBounds { max_form_order: 3, max_order: 4 }).unwrap().dimension(), 0);
    }

    #[test]
    fn twisted_cotangent_examples() {
        let b = FreeWCDGA::new(vec![poly_gen("x")]);
        let (t, w) = generate_twisted_cotangent(&b, &Element::zero(), -1, 0).unwrap();
        let p = t.generator("p_x").unwrap();
        assert_eq!(p.degree(), -1);
        assert!(t.validate().is_valid());
        assert!(check_presymplectic(&t, &w).unwrap().is_valid());
        assert!(check_symplectic_strict(&t, &w).unwrap().passed);

        let f = b.gen("x").pow(3);
        let (t, w) = generate_twisted_cotangent(&b, &f, -1, 0).unwrap();
        let dp = t.differential.image(t.generator("p_x").unwrap()).unwrap();
        let x2 = t.gen("x").pow(2);
        assert!(dp == &x2.scale(&int(3)) || dp == &x2.scale(&int(-3)));
        assert!(t.validate().is_valid());
        assert!(check_presymplectic(&t, &w).unwrap().is_valid());
        assert!(check_symplectic_strict(&t, &w).unwrap().passed);

        let (t, w) = generate_twisted_cotangent(&b, &Element::zero(), -1, 1).unwrap();
        assert_eq!(t.generator("p_x").unwrap().weight(), 1);
        assert_eq!(w.omega(2).weight(), Some(1));
        assert!(check_symplectic_strict(&t, &w).unwrap().passed);

        let y = FreeWCDGA::new(vec![poly_gen("x"), Generator::new("y", -1, 0)]);
        let yy = y.gen("y");
        assert!(matches!(generate_twisted_cotangent(&y.clone().with_differential("y", y.gen("x")), &yy, -2, 0), Err(Error::NotClosed(_))));
    }
}
