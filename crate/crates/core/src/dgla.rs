//! Finite-dimensional differential graded Lie algebras and their deformation theory.
//!
//! Elements of `L ⊗ A` are stored as one coefficient in `A` per basis vector.
//! The conventions are
//!
//! - `[e_a ⊗ u, e_b ⊗ v] = (−1)^{|u||e_b|} [e_a, e_b] ⊗ uv`,
//! - `δ(e ⊗ u) = δe ⊗ u + (−1)^{|e|} e ⊗ δu`.
//!
//! The Chevalley–Eilenberg generator `x^a` dual to `e_a` has degree `1 − |e_a|`
//! and weight `−wt(e_a)`; its differential is the unique one making the
//! universal element `Σ e_a ⊗ x^a` Maurer–Cartan.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{self, Element, Generator, Monomial, Truncation};
use crate::cdga::{enumerate_monomials, FreeWCDGA, MonomialBound};
use crate::derham::{self, PreSymplectic};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};
use crate::polyvector::{PoissonStructure, PolyContext};
use crate::scalar::{self, ratio, Scalar};

/// An element of `L ⊗ A`.
pub type Tensor = Vec<Element>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

/// A DGLA on a finite homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dgla {
    pub basis: Vec<BasisVector>,
    /// Column `a` holds `δe_a`.
    pub differential: Matrix,
    /// `[e_a, e_b] = Σ_c C^c_{ab} e_c`, keyed by `(a, b)`.
    pub bracket: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

/// A graded-symmetric invariant pairing of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPairing {
    pub matrix: Matrix,
    pub d: i64,
    pub weight: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomKind {
    Homogeneity,
    Antisymmetry,
    Jacobi,
    DifferentialSquare,
    DifferentialDerivation,
    PairingSupport,
    PairingSymmetry,
    PairingInvariance,
    PairingDifferential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub kind: AxiomKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: AxiomKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: AxiomKind, detail: String) {
        self.violations.push(AxiomViolation { kind, detail });
    }
}

/// A small extension `A' → A' / I` with `I` spanned by monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallExtension {
    pub algebra: FreeWCDGA,
    pub kernel: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionOutcome {
    Lift(Tensor),
    /// The canonical representative of the obstruction modulo boundaries in `L ⊗ I`.
    Obstruction { class: Tensor, residue: Tensor },
}

/// Homology dimensions of `(L ⊗ A, δ + [α, −])[1]`, keyed by shifted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentComplex {
    pub dims: BTreeMap<i64, usize>,
}

fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![scalar::zero(); n]
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(num_traits::Zero::is_zero)
}

fn marker(a: usize) -> Generator {
    Generator::new(&format!("#{a:04}"), 0, 0)
}

fn flatten(t: &[Element]) -> Element {
    let mut out = Element::zero();
    for (a, u) in t.iter().enumerate() {
        if !u.is_zero() {
            out += &Element::generator(&marker(a)).mul(u);
        }
    }
    out
}

fn unflatten(e: &Element, dim: usize) -> Tensor {
    let mut out = vec![Element::zero(); dim];
    for (m, c) in e.terms() {
        let mut idx = None;
        let mut rest = Vec::new();
        for (g, k) in m.factors() {
            match g.name().strip_prefix('#') {
                Some(i) => idx = i.parse::<usize>().ok(),
                None => rest.push((g.clone(), *k)),
            }
        }
        let a = idx.expect("flattened tensor term carries a marker");
        let (_, mono) = algebra::normalize(&rest).expect("factors of a monomial");
        out[a].add_term(mono, c.clone());
    }
    out
}

impl Dgla {
    pub fn new(basis: Vec<BasisVector>) -> Self {
        let n = basis.len();
        Dgla { basis, differential: Matrix::zeros(n, n), bracket: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, a: usize) -> i64 {
        self.basis[a].degree
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Set `[e_a, e_b]` and the antisymmetric partner `[e_b, e_a]`.
    pub fn set_bracket(&mut self, a: usize, b: usize, terms: &[(usize, Scalar)]) {
        let sign = -scalar::sign(self.degree(a) * self.degree(b));
        let fwd: BTreeMap<usize, Scalar> = terms.iter().filter(|(_, c)| !num_traits::Zero::is_zero(c)).cloned().collect();
        let back = fwd.iter().map(|(k, c)| (*k, c * &sign)).collect();
        self.bracket.insert((a, b), fwd);
        if a != b {
            self.bracket.insert((b, a), back);
        }
    }

    pub fn set_differential(&mut self, a: usize, terms: &[(usize, Scalar)]) {
        for (c, v) in terms {
            self.differential.set(*c, a, v.clone());
        }
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        if let Some(t) = self.bracket.get(&(a, b)) {
            for (c, v) in t {
                out[*c] = v.clone();
            }
        }
        out
    }

    pub fn bracket_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !num_traits::Zero::is_zero(*x)) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !num_traits::Zero::is_zero(*y)) {
                if let Some(t) = self.bracket.get(&(a, b)) {
                    for (c, k) in t {
                        out[*c] += x * y * k;
                    }
                }
            }
        }
        out
    }

    pub fn delta_vec(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.differential.apply(u)
    }

    fn unit(&self, a: usize) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim());
        v[a] = scalar::one();
        v
    }

    /// Antisymmetry, Jacobi, `δ² = 0`, the derivation rule and homogeneity, on basis elements.
    pub fn validate(&self) -> AxiomReport {
        let mut r = AxiomReport::default();
        let n = self.dim();
        let deg = |a: usize| self.degree(a);
        for ((a, b), t) in &self.bracket {
            for c in t.keys() {
                let (ba, bb, bc) = (&self.basis[*a], &self.basis[*b], &self.basis[*c]);
                if bc.degree != ba.degree + bb.degree || bc.weight != ba.weight + bb.weight {
                    r.push(AxiomKind::Homogeneity, format!("[{}, {}] has a {} component", ba.name, bb.name, bc.name));
                }
            }
        }
        for a in 0..n {
            for c in 0..n {
                if !num_traits::Zero::is_zero(self.differential.get(c, a))
                    && (deg(c) != deg(a) + 1 || self.basis[c].weight != self.basis[a].weight)
                {
                    r.push(AxiomKind::Homogeneity, format!("δ{} has a {} component", self.basis[a].name, self.basis[c].name));
                }
            }
        }
        for a in 0..n {
            let dd = self.delta_vec(&self.delta_vec(&self.unit(a)));
            if !is_zero_vec(&dd) {
                r.push(AxiomKind::DifferentialSquare, format!("δ²{} ≠ 0", self.basis[a].name));
            }
            for b in 0..n {
                let ab = self.bracket_basis(a, b);
                let ba = self.bracket_basis(b, a);
                let sym: Vec<Scalar> = ab.iter().zip(&ba).map(|(x, y)| x + y * scalar::sign(deg(a) * deg(b))).collect();
                if !is_zero_vec(&sym) {
                    r.push(AxiomKind::Antisymmetry, format!("[{0}, {1}] and [{1}, {0}]", self.basis[a].name, self.basis[b].name));
                }
                let lhs = self.delta_vec(&ab);
                let r1 = self.bracket_vec(&self.delta_vec(&self.unit(a)), &self.unit(b));
                let r2 = self.bracket_vec(&self.unit(a), &self.delta_vec(&self.unit(b)));
                let s = scalar::sign(deg(a));
                let res: Vec<Scalar> = (0..n).map(|i| &lhs[i] - &r1[i] - &r2[i] * &s).collect();
                if !is_zero_vec(&res) {
                    r.push(AxiomKind::DifferentialDerivation, format!("δ[{}, {}]", self.basis[a].name, self.basis[b].name));
                }
                for c in 0..n {
                    // [x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]
                    let lhs = self.bracket_vec(&self.unit(a), &self.bracket_basis(b, c));
                    let t1 = self.bracket_vec(&ab, &self.unit(c));
                    let t2 = self.bracket_vec(&self.unit(b), &self.bracket_basis(a, c));
                    let s = scalar::sign(deg(a) * deg(b));
                    let res: Vec<Scalar> = (0..n).map(|i| &lhs[i] - &t1[i] - &t2[i] * &s).collect();
                    if !is_zero_vec(&res) {
                        r.push(
                            AxiomKind::Jacobi,
                            format!("({}, {}, {})", self.basis[a].name, self.basis[b].name, self.basis[c].name),
                        );
                    }
                }
            }
        }
        r
    }

    /// Support, graded symmetry, invariance and compatibility with `δ`.
    pub fn validate_pairing(&self, p: &CyclicPairing) -> AxiomReport {
        let mut r = AxiomReport::default();
        let n = self.dim();
        let g = |a: usize, b: usize| p.matrix.get(a, b).clone();
        let pair = |u: &[Scalar], v: &[Scalar]| -> Scalar {
            let mut acc = scalar::zero();
            for a in 0..n {
                for b in 0..n {
                    if !num_traits::Zero::is_zero(&u[a]) && !num_traits::Zero::is_zero(&v[b]) {
                        acc += &u[a] * &v[b] * g(a, b);
                    }
                }
            }
            acc
        };
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (&self.basis[a], &self.basis[b]);
                let v = g(a, b);
                if !num_traits::Zero::is_zero(&v) && (ea.degree + eb.degree != p.d || ea.weight + eb.weight != p.weight) {
                    r.push(AxiomKind::PairingSupport, format!("⟨{}, {}⟩", ea.name, eb.name));
                }
                if v != g(b, a) * scalar::sign(ea.degree * eb.degree) {
                    r.push(AxiomKind::PairingSymmetry, format!("⟨{}, {}⟩", ea.name, eb.name));
                }
                let dd = pair(&self.delta_vec(&self.unit(a)), &self.unit(b)) + pair(&self.unit(a), &self.delta_vec(&self.unit(b))) * scalar::sign(ea.degree);
                if !num_traits::Zero::is_zero(&dd) {
                    r.push(AxiomKind::PairingDifferential, format!("⟨δ{}, {}⟩", ea.name, eb.name));
                }
                for c in 0..n {
                    let lhs = pair(&self.bracket_basis(a, b), &self.unit(c));
                    let rhs = pair(&self.unit(a), &self.bracket_basis(b, c));
                    if lhs != rhs {
                        r.push(AxiomKind::PairingInvariance, format!("⟨[{}, {}], {}⟩", ea.name, eb.name, self.basis[c].name));
                    }
                }
            }
        }
        r
    }

    /// Bracket on `L ⊗ A`.
    pub fn tensor_bracket(&self, x: &[Element], y: &[Element], t: &Truncation) -> Tensor {
        let mut out = vec![Element::zero(); self.dim()];
        for (a, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for (b, v) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let Some(cs) = self.bracket.get(&(a, b)) else { continue };
                let mut uv = Element::zero();
                for (du, part) in u.by_degree() {
                    uv += &part.mul_truncated(v, t).scale(&scalar::sign(du * self.degree(b)));
                }
                for (c, k) in cs {
                    out[*c] += &uv.scale(k);
                }
            }
        }
        out
    }

    /// Differential on `L ⊗ A`.
    pub fn tensor_delta(&self, a: &FreeWCDGA, x: &[Element]) -> Result<Tensor> {
        let n = self.dim();
        let mut out = vec![Element::zero(); n];
        for (i, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for c in 0..n {
                let k = self.differential.get(c, i);
                if !num_traits::Zero::is_zero(k) {
                    out[c] += &u.scale(k);
                }
            }
            out[i] += &a.delta(u)?.scale(&scalar::sign(self.degree(i)));
        }
        Ok(out)
    }

    /// `δα + ½[α, α]`.
    pub fn mc_residue(&self, a: &FreeWCDGA, alpha: &[Element]) -> Result<Tensor> {
        let d = self.tensor_delta(a, alpha)?;
        let b = self.tensor_bracket(alpha, alpha, &a.truncation);
        Ok(d.iter().zip(&b).map(|(x, y)| a.truncation.apply(&(x + &y.scale(&ratio(1, 2))))).collect())
    }

    pub fn check_mc_element(&self, a: &FreeWCDGA, alpha: &[Element]) -> Result<Tensor> {
        self.mc_residue(a, alpha)
    }

    /// `g * α = α + Σ_k ad_g^k([g, α] − δg) / (k + 1)!`.
    pub fn gauge_act(&self, a: &FreeWCDGA, g: &[Element], alpha: &[Element]) -> Result<Tensor> {
        let before = self.mc_residue(a, alpha)?;
        if before.iter().any(|e| !e.is_zero()) {
            return Err(Error::NotMC { residue: flatten(&before) });
        }
        let t = &a.truncation;
        let dg = self.tensor_delta(a, g)?;
        let mut term: Tensor = self.tensor_bracket(g, alpha, t).iter().zip(&dg).map(|(x, y)| x - y).collect();
        let mut out: Tensor = alpha.to_vec();
        let mut k: u32 = 0;
        while term.iter().any(|e| !e.is_zero()) {
            if k > 64 {
                return Err(Error::NonFormal("gauge series does not terminate".into()));
            }
            let f = scalar::one() / scalar::factorial(k + 1);
            for (o, x) in out.iter_mut().zip(&term) {
                *o += &x.scale(&f);
            }
            term = self.tensor_bracket(g, &term, t);
            k += 1;
        }
        let out: Tensor = out.iter().map(|e| t.apply(e)).collect();
        let after = self.mc_residue(a, &out)?;
        if after.iter().any(|e| !e.is_zero()) {
            return Err(Error::MCFailure { residue: flatten(&after) });
        }
        Ok(out)
    }

    /// Lift `α ∈ MC(A'/I)` to `A'` or return the obstruction class.
    pub fn mc_extend(&self, ext: &SmallExtension, alpha: &[Element]) -> Result<ExtensionOutcome> {
        let a = &ext.algebra;
        let kernel: BTreeSet<&Monomial> = ext.kernel.iter().collect();
        for k in &ext.kernel {
            if k.is_one() {
                return Err(Error::NotSmall("the kernel contains the unit".into()));
            }
            for g in &a.generators {
                let p = a.mul(&Element::monomial(k.clone()), &Element::generator(g));
                if !p.is_zero() {
                    return Err(Error::NotSmall(format!("{k}·{g} ≠ 0")));
                }
            }
            let dk = a.delta(&Element::monomial(k.clone()))?;
            if dk.terms().any(|(m, _)| !kernel.contains(m)) {
                return Err(Error::NotSmall(format!("δ({k}) leaves the kernel")));
            }
        }
        let residue = self.mc_residue(a, alpha)?;
        if residue.iter().flat_map(|e| e.terms()).any(|(m, _)| !kernel.contains(m)) {
            return Err(Error::InvalidInput("α is not Maurer–Cartan modulo the kernel".into()));
        }
        let closed = self.tensor_delta(a, &residue)?;
        if closed.iter().any(|e| !a.truncation.apply(e).is_zero()) {
            return Err(Error::NotClosed(flatten(&closed)));
        }
        let mut sources = Vec::new();
        let mut columns = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            for k in &ext.kernel {
                if b.degree + k.degree() == 1 {
                    let mut u = vec![Element::zero(); self.dim()];
                    u[i] = Element::monomial(k.clone());
                    columns.push(flatten(&self.tensor_delta(a, &u)?));
                    sources.push(u);
                }
            }
        }
        let target = -flatten(&residue);
        match linalg::solve(&columns, &target) {
            Some(coeffs) => {
                let mut lift = alpha.to_vec();
                for (u, c) in sources.iter().zip(&coeffs) {
                    for (l, x) in lift.iter_mut().zip(u) {
                        *l += &x.scale(c);
                    }
                }
                Ok(ExtensionOutcome::Lift(lift))
            }
            None => {
                let mut ech = Echelon::new();
                for c in &columns {
                    ech.insert(c);
                }
                let class = unflatten(&ech.reduce(&flatten(&residue)), self.dim());
                Ok(ExtensionOutcome::Obstruction { class, residue })
            }
        }
    }

    /// Homology of the twisted complex `(L ⊗ A, δ + [α, −])`, shifted by one.
    pub fn tangent_complex(&self, a: &FreeWCDGA, alpha: &[Element]) -> Result<TangentComplex> {
        let residue = self.mc_residue(a, alpha)?;
        if residue.iter().any(|e| !e.is_zero()) {
            return Err(Error::NotMC { residue: flatten(&residue) });
        }
        let max_order = match a.truncation.max_order {
            Some(n) => n,
            None if a.generators.is_empty() => 0,
            None => return Err(Error::NonFormal("tangent complex needs a finite coefficient algebra".into())),
        };
        let monos = enumerate_monomials(&a.generators, &MonomialBound { max_order, ..Default::default() }, |m| a.truncation.allows(m));
        let mut by_degree: BTreeMap<i64, Vec<Tensor>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            for m in &monos {
                let mut u = vec![Element::zero(); self.dim()];
                u[i] = Element::monomial(m.clone());
                by_degree.entry(b.degree + m.degree()).or_default().push(u);
            }
        }
        let apply = |x: &Tensor| -> Result<Element> {
            let d = self.tensor_delta(a, x)?;
            let b = self.tensor_bracket(alpha, x, &a.truncation);
            Ok(a.truncation.apply(&flatten(&d.iter().zip(&b).map(|(p, q)| p + q).collect::<Vec<_>>())))
        };
        for basis in by_degree.values() {
            for u in basis {
                let once = unflatten(&apply(u)?, self.dim());
                let twice = apply(&once)?;
                if !twice.is_zero() {
                    return Err(Error::NotClosed(twice));
                }
            }
        }
        let mut ranks = BTreeMap::new();
        let mut kernels = BTreeMap::new();
        for (&k, basis) in &by_degree {
            let inputs: Vec<Element> = basis.iter().map(|u| flatten(u)).collect();
            let images = basis.iter().map(&apply).collect::<Result<Vec<_>>>()?;
            let ker = linalg::kernel(&inputs, &images).len();
            ranks.insert(k, inputs.len() - ker);
            kernels.insert(k, ker);
        }
        let dims = kernels
            .iter()
            .map(|(&k, &z)| (k - 1, z - ranks.get(&(k - 1)).copied().unwrap_or(0)))
            .collect();
        Ok(TangentComplex { dims })
    }

    /// The Chevalley–Eilenberg algebra, truncated at polynomial order `max_order`.
    pub fn ce_algebra(&self, max_order: u32) -> Result<FreeWCDGA> {
        let gens: Vec<Generator> = self.basis.iter().map(|b| Generator::new(&b.name, 1 - b.degree, -b.weight)).collect();
        let x: Vec<Element> = gens.iter().map(Element::generator).collect();
        let mut a = FreeWCDGA::new(gens.clone()).with_truncation(Truncation::order(max_order));
        let n = self.dim();
        let half = ratio(1, 2);
        for c in 0..n {
            let mut img = Element::zero();
            for i in 0..n {
                let k = self.differential.get(c, i);
                if !num_traits::Zero::is_zero(k) {
                    img += &x[i].scale(k);
                }
            }
            for ((i, j), t) in &self.bracket {
                if let Some(k) = t.get(&c) {
                    let s = scalar::sign((1 + self.degree(*i)) * self.degree(*j));
                    img += &x[*i].mul(&x[*j]).scale(&(k * &s * &half));
                }
            }
            let img = img.scale(&-scalar::sign(self.degree(c)));
            a.differential.set(&gens[c], a.truncation.apply(&img));
        }
        for g in &gens {
            let sq = a.delta(a.differential.image(g).expect("image set"))?;
            if !sq.is_zero() {
                return Err(Error::AxiomFailure { witness: sq });
            }
        }
        Ok(a)
    }

    /// `Σ e_a ⊗ x^a` over the Chevalley–Eilenberg algebra.
    pub fn universal_element(&self, ce: &FreeWCDGA) -> Tensor {
        self.basis.iter().map(|b| ce.gen(&b.name)).collect()
    }

    /// `ω = ⟨dα, dα⟩ = Σ (−1)^{|dx^a||e_b|} ⟨e_a, e_b⟩ dx^a dx^b`, of shift `2 − d`.
    pub fn formal_symplectic(&self, p: &CyclicPairing, m: i64, max_order: u32) -> Result<(FreeWCDGA, PreSymplectic)> {
        if m != -p.weight {
            return Err(Error::InvalidInput(format!("structure weight {m} must be minus the pairing weight {}", p.weight)));
        }
        let ce = self.ce_algebra(max_order)?;
        let forms = derham::form_generators(&ce);
        let mut omega = Element::zero();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let g = p.matrix.get(a, b);
                if num_traits::Zero::is_zero(g) {
                    continue;
                }
                let s = scalar::sign(forms[a].degree() * self.degree(b));
                omega += &Element::generator(&forms[a]).mul(&Element::generator(&forms[b])).scale(&(g * s));
            }
        }
        let w = PreSymplectic::new(2 - p.d, m, omega, 2);
        let report = derham::check_presymplectic(&ce, &w)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::ClosureFailure { witness: v.witness.clone() });
        }
        Ok((ce, w))
    }

    /// `⟨dα, dα⟩` assembled through `L ⊗ Ω¹` for the universal element.
    pub fn pair_universal_differential(&self, p: &CyclicPairing, ce: &FreeWCDGA) -> Element {
        let alpha = self.universal_element(ce);
        let dalpha: Tensor = alpha.iter().map(derham::d).collect();
        pair_tensors(self, p, &dalpha, &dalpha)
    }

    /// `ω` together with its universal pairing, for the order-two check.
    pub fn casimir_poisson(&self, p: &CyclicPairing, m: i64, max_order: u32) -> Result<(PolyContext, PoissonStructure)> {
        let c = casimir(p)?;
        let ce = self.ce_algebra(max_order)?;
        let ctx = PolyContext::new(ce, 2 - p.d, m, None);
        let quarter = ratio(1, 4);
        let mut pi = Element::zero();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let v = c.get(a, b);
                if !num_traits::Zero::is_zero(v) {
                    let (ta, tb) = (&ctx.tangents[a], &ctx.tangents[b]);
                    pi += &Element::generator(ta).mul(&Element::generator(tb)).scale(&(v * &quarter));
                }
            }
        }
        let residue = ctx.check_mc(&pi)?;
        Ok((ctx, PoissonStructure { pi, residue }))
    }
}

/// `⟨e_a ⊗ u, e_b ⊗ v⟩ = (−1)^{|u||e_b|} ⟨e_a, e_b⟩ uv`.
pub fn pair_tensors(l: &Dgla, p: &CyclicPairing, x: &[Element], y: &[Element]) -> Element {
    let mut out = Element::zero();
    for (a, u) in x.iter().enumerate() {
        for (b, v) in y.iter().enumerate() {
            let g = p.matrix.get(a, b);
            if num_traits::Zero::is_zero(g) || u.is_zero() || v.is_zero() {
                continue;
            }
            for (du, part) in u.by_degree() {
                out += &part.mul(v).scale(&(g * scalar::sign(du * l.degree(b))));
            }
        }
    }
    out
}

/// The Casimir tensor `c = G⁻¹`, so that `Σ_b ⟨e_a, e_b⟩ c^{bc} = δ_a^c`.
pub fn casimir(p: &CyclicPairing) -> Result<Matrix> {
    p.matrix.inverse().ok_or(Error::NotInvertible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::poly_gen;
    use crate::scalar::int;

    fn bv(name: &str, degree: i64) -> BasisVector {
        BasisVector { name: name.into(), degree, weight: 0 }
    }

    fn sl2() -> (Dgla, CyclicPairing) {
        let mut l = Dgla::new(vec![bv("h", 0), bv("e", 0), bv("f", 0)]);
        l.set_bracket(0, 1, &[(1, int(2))]);
        l.set_bracket(0, 2, &[(2, int(-2))]);
        l.set_bracket(1, 2, &[(0, int(1))]);
        let g = Matrix::from_rows(vec![
            vec![int(8), int(0), int(0)],
            vec![int(0), int(0), int(4)],
            vec![int(0), int(4), int(0)],
        ]);
        (l, CyclicPairing { matrix: g, d: 0, weight: 0 })
    }

    fn dual_numbers(order: u32) -> FreeWCDGA {
        FreeWCDGA::new(vec![poly_gen("eps")]).with_truncation(Truncation::order(order))
    }

    #[test]
    fn sl2_axioms_and_perturbation() {
        let (l, p) = sl2();
        assert!(l.validate().is_valid());
        assert!(l.validate_pairing(&p).is_valid());
        let mut bad = l.clone();
        bad.set_bracket(0, 1, &[(1, int(3))]);
        assert!(bad.validate().has(AxiomKind::Jacobi));
        assert!(matches!(bad.ce_algebra(3), Err(Error::AxiomFailure { .. })));
        assert!(l.ce_algebra(3).unwrap().validate().is_valid());
    }

    #[test]
    fn universal_element_is_maurer_cartan() {
        let (l, _) = sl2();
        let ce = l.ce_algebra(4).unwrap();
        let alpha = l.universal_element(&ce);
        assert!(l.mc_residue(&ce, &alpha).unwrap().iter().all(Element::is_zero));
    }

    #[test]
    fn mc_elements_over_dual_numbers() {
        let mut l = Dgla::new(vec![bv("x", 1), bv("y", 2)]);
        l.set_bracket(0, 0, &[(1, int(1))]);
        assert!(l.validate().is_valid());
        let a = dual_numbers(1);
        let alpha = vec![a.gen("eps"), Element::zero()];
        assert!(l.check_mc_element(&a, &alpha).unwrap().iter().all(Element::is_zero));
        let zero = vec![Element::zero(); 2];
        assert!(l.check_mc_element(&a, &zero).unwrap().iter().all(Element::is_zero));
    }

    #[test]
    fn obstruction_for_square_bracket() {
        let mut l = Dgla::new(vec![bv("x", 1), bv("y", 2)]);
        l.set_bracket(0, 0, &[(1, int(1))]);
        let big = dual_numbers(2);
        let eps = big.gen("eps");
        let kernel = vec![eps.pow(2).leading().unwrap().0.clone()];
        let ext = SmallExtension { algebra: big.clone(), kernel };
        let alpha = vec![eps.clone(), Element::zero()];
        match l.mc_extend(&ext, &alpha).unwrap() {
            ExtensionOutcome::Obstruction { class, .. } => {
                assert!(class[0].is_zero());
                assert_eq!(class[1], eps.pow(2).scale(&ratio(1, 2)));
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
        // abelian: always lifts
        let ab = Dgla::new(vec![bv("x", 1), bv("y", 2)]);
        assert!(matches!(ab.mc_extend(&ext, &alpha).unwrap(), ExtensionOutcome::Lift(_)));
        let not_small = SmallExtension { algebra: big, kernel: vec![eps.leading().unwrap().0.clone()] };
        assert!(matches!(l.mc_extend(&not_small, &alpha), Err(Error::NotSmall(_))));
    }

    #[test]
    fn gauge_examples() {
        // [x, y] = y with |x| = 0, |y| = 1
        let mut l = Dgla::new(vec![bv("x", 0), bv("y", 1)]);
        l.set_bracket(0, 1, &[(1, int(1))]);
        assert!(l.validate().is_valid());
        let a = dual_numbers(2);
        let eps = a.gen("eps");
        let alpha = vec![Element::zero(), eps.clone()];
        let g = vec![eps.clone(), Element::zero()];
        let out = l.gauge_act(&a, &g, &alpha).unwrap();
        assert_eq!(out[1], &eps + &eps.pow(2));
        assert_eq!(l.gauge_act(&a, &[Element::zero(), Element::zero()], &alpha).unwrap(), alpha);
        // abelian with δu = v: g * α = α − δg
        let mut ab = Dgla::new(vec![bv("u", 0), bv("v", 1)]);
        ab.set_differential(0, &[(1, int(1))]);
        let g = vec![eps.scale(&int(3)), Element::zero()];
        let out = ab.gauge_act(&a, &g, &alpha).unwrap();
        assert_eq!(out[1], eps.scale(&int(-2)));
    }

    #[test]
    fn formal_symplectic_and_casimir_for_sl2() {
        let (l, p) = sl2();
        let (ce, w) = l.formal_symplectic(&p, 0, 3).unwrap();
        assert_eq!(w.n, 2);
        let m = derham::two_form_sharp(&ce, &w.omega(2)).augmentation();
        let twice = Matrix::from_rows((0..3).map(|i| (0..3).map(|j| p.matrix.get(i, j) * int(2)).collect()).collect());
        assert_eq!(m, twice);
        assert!(derham::check_symplectic_strict(&ce, &w).unwrap().passed);
        assert_eq!(l.pair_universal_differential(&p, &ce), w.omega(2));
        let c = casimir(&p).unwrap();
        assert_eq!(p.matrix.mul(&c), Matrix::identity(3));
        let (ctx, pi) = l.casimir_poisson(&p, 0, 3).unwrap();
        assert!(pi.is_certified());
        assert!(ctx.check_nondegenerate(&pi.pi).unwrap().passed());
        let inv = crate::correspondence::invert_two_form(&ctx, &w.omega(2)).unwrap();
        assert_eq!(inv.pi, pi.pi);
        let degenerate = CyclicPairing { matrix: Matrix::zeros(3, 3), d: 0, weight: 0 };
        assert!(matches!(casimir(&degenerate), Err(Error::NotInvertible)));
    }

    #[test]
    fn tangent_complex_at_zero() {
        let (l, _) = sl2();
        let q = FreeWCDGA::new(vec![]);
        let t = l.tangent_complex(&q, &[Element::zero(), Element::zero(), Element::zero()]).unwrap();
        assert_eq!(t.dims, BTreeMap::from([(-1, 3)]));
    }
}
