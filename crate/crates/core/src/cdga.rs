//! Weighted free differential graded-commutative algebras.
//!
//! Degrees are cohomological throughout; an algebra in non-negative chain
//! degrees has every generator in degree `≤ 0`. Quotients are never stored as
//! ideals inside an algebra. A [`QuotientTarget`] carries relations only so
//! that resolutions can be checked against it.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Derivation, Element, Generator, Kind, Monomial, Truncation};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::scalar;

/// A free weighted CDGA: generators, a degree-one weight-zero differential and truncation bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeWCDGA {
    pub generators: Vec<Generator>,
    pub differential: Derivation,
    pub truncation: Truncation,
    pub nonneg_chain: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    SquareNonzero,
    DegreeMismatch,
    WeightMismatch,
    PositiveChainDegree,
    MissingImage,
    WrongKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub generator: String,
    pub witness: Element,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Basis of one `(degree, weight)` slice up to a polynomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: i64,
    pub weight: i64,
    pub basis: Vec<Monomial>,
}

impl GradedPiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Limits for monomial enumeration.
#[derive(Clone, Debug, Default)]
pub struct MonomialBound {
    /// Maximal count of base and form factors.
    pub max_order: u32,
    /// Inclusive range for the number of form factors.
    pub form_order: Option<(u32, u32)>,
    /// Inclusive range for the number of tangent factors.
    pub tangent_order: Option<(u32, u32)>,
}

/// All normal-form monomials in `gens` within `bound` that satisfy `keep`, in sorted order.
pub fn enumerate_monomials(gens: &[Generator], bound: &MonomialBound, keep: impl Fn(&Monomial) -> bool) -> Vec<Monomial> {
    let mut sorted: Vec<Generator> = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let form_max = bound.form_order.map_or(u32::MAX, |r| r.1);
    let tangent_max = bound.tangent_order.map_or(0, |r| r.1);
    let mut out = Vec::new();
    let mut factors: Vec<(Generator, u32)> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        gens: &[Generator],
        order: u32,
        forms: u32,
        tangents: u32,
        lim: (u32, u32, u32),
        factors: &mut Vec<(Generator, u32)>,
        emit: &mut dyn FnMut(&[(Generator, u32)], u32, u32),
    ) {
        if i == gens.len() {
            emit(factors, forms, tangents);
            return;
        }
        let g = &gens[i];
        let cap = match g.kind() {
            Kind::Base => lim.0 - order,
            Kind::Form => (lim.0 - order).min(lim.1.saturating_sub(forms)),
            Kind::Tangent => lim.2 - tangents,
        };
        let cap = if g.is_odd() { cap.min(1) } else { cap };
        for e in 0..=cap {
            if e > 0 {
                factors.push((g.clone(), e));
            }
            let (o, f, t) = match g.kind() {
                Kind::Base => (order + e, forms, tangents),
                Kind::Form => (order + e, forms + e, tangents),
                Kind::Tangent => (order, forms, tangents + e),
            };
            rec(i + 1, gens, o, f, t, lim, factors, emit);
            if e > 0 {
                factors.pop();
            }
        }
    }

    let mut emit = |fs: &[(Generator, u32)], forms: u32, tangents: u32| {
        if let Some((lo, _)) = bound.form_order {
            if forms < lo {
                return;
            }
        }
        if let Some((lo, _)) = bound.tangent_order {
            if tangents < lo {
                return;
            }
        }
        let m = crate::algebra::normalize(fs).expect("sorted distinct factors").1;
        if keep(&m) {
            out.push(m);
        }
    };
    rec(0, &sorted, 0, 0, 0, (bound.max_order, form_max, tangent_max), &mut factors, &mut emit);
    out.sort();
    out
}

/// Homology of one slice together with the bounds that were needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub degree: i64,
    pub weight: i64,
    pub dimension: usize,
    pub representatives: Vec<Element>,
    pub order_used: u32,
    pub padding: u32,
}

/// Stabilization controls for homology of untruncated algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Extra orders tried beyond the requested one before giving up.
    pub ceiling: u32,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { ceiling: 8 }
    }
}

/// A quotient of a free algebra by relations, used as a resolution target.
///
/// Relations must be cycles, homogeneous in degree, weight and polynomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTarget {
    pub algebra: FreeWCDGA,
    pub relations: Vec<Element>,
}

/// A quasi-free algebra with a map onto its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub algebra: FreeWCDGA,
    pub map: BTreeMap<Generator, Element>,
    pub added: Vec<Generator>,
}

/// Per-slice comparison of homology under a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceComparison {
    pub degree: i64,
    pub weight: i64,
    pub source_dimension: usize,
    pub target_dimension: usize,
    pub rank: usize,
}

impl SliceComparison {
    pub fn is_iso(&self) -> bool {
        self.source_dimension == self.target_dimension && self.rank == self.source_dimension
    }
}

struct SliceData {
    cycles: Vec<Element>,
    boundaries: Echelon,
}

impl FreeWCDGA {
    pub fn new(generators: Vec<Generator>) -> Self {
        let differential = Derivation::zero_on(&generators, 1, 0);
        FreeWCDGA { generators, differential, truncation: Truncation::none(), nonneg_chain: false }
    }

    pub fn with_differential(mut self, name: &str, image: Element) -> Self {
        let g = self.generator(name).unwrap_or_else(|| panic!("no generator `{name}`")).clone();
        self.differential.set(&g, image);
        self
    }

    pub fn with_truncation(mut self, t: Truncation) -> Self {
        self.truncation = t;
        self
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn gen(&self, name: &str) -> Element {
        Element::generator(self.generator(name).unwrap_or_else(|| panic!("no generator `{name}`")))
    }

    pub fn delta(&self, a: &Element) -> Result<Element> {
        self.differential.apply_truncated(a, &self.truncation)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        a.mul_truncated(b, &self.truncation)
    }

    /// Check `δ² = 0`, homogeneity of generator images, and the chain-degree flag.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut push = |kind, g: &Generator, witness| report.violations.push(Violation { kind, generator: g.label(), witness });
        for g in &self.generators {
            if g.kind() != Kind::Base {
                push(ViolationKind::WrongKind, g, Element::generator(g));
            }
            if self.nonneg_chain && g.degree() > 0 {
                push(ViolationKind::PositiveChainDegree, g, Element::generator(g));
            }
            let Some(img) = self.differential.image(g) else {
                push(ViolationKind::MissingImage, g, Element::zero());
                continue;
            };
            let img = self.truncation.apply(img);
            if img.terms().any(|(m, _)| m.degree() != g.degree() + 1) {
                push(ViolationKind::DegreeMismatch, g, img.clone());
            }
            if img.terms().any(|(m, _)| m.weight() != g.weight()) {
                push(ViolationKind::WeightMismatch, g, img.clone());
            }
            match self.delta(&img) {
                Ok(sq) if !sq.is_zero() => push(ViolationKind::SquareNonzero, g, sq),
                Ok(_) => {}
                Err(_) => push(ViolationKind::MissingImage, g, img.clone()),
            }
        }
        report
    }

    fn effective_order(&self, max_order: u32) -> u32 {
        self.truncation.max_order.map_or(max_order, |n| n.min(max_order))
    }

    /// Monomial basis of the `(degree, weight)` slice of polynomial order `≤ max_order`.
    pub fn graded_piece(&self, degree: i64, weight: i64, max_order: u32) -> GradedPiece {
        let bound = MonomialBound { max_order: self.effective_order(max_order), ..Default::default() };
        let basis = enumerate_monomials(&self.generators, &bound, |m| {
            m.degree() == degree && m.weight() == weight && self.truncation.allows(m)
        });
        GradedPiece { degree, weight, basis }
    }

    fn max_delta_raise(&self) -> u32 {
        self.differential
            .images
            .values()
            .flat_map(|e| e.terms().map(|(m, _)| m.order()))
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Span of `m·r` over relations `r` in a slice, bounded in order.
    fn ideal_slice(&self, relations: &[Element], degree: i64, weight: i64, max_order: u32) -> Vec<Element> {
        let mut out = Vec::new();
        for r in relations {
            let Some(lead) = r.leading() else { continue };
            let (rd, rw, ro) = (lead.0.degree(), lead.0.weight(), lead.0.order());
            if ro > max_order {
                continue;
            }
            for m in self.graded_piece(degree - rd, weight - rw, max_order - ro).basis {
                let p = self.mul(&Element::monomial(m), r);
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Cycles and boundaries of one slice at a fixed order and padding.
    fn slice_data(&self, relations: &[Element], degree: i64, weight: i64, order: u32, pad: u32) -> Result<SliceData> {
        let truncated = self.truncation.max_order.is_some();
        let (order, pad) = if truncated { (self.effective_order(order), 0) } else { (order, pad) };
        let v: Vec<Element> = self.graded_piece(degree, weight, order).basis.into_iter().map(Element::monomial).collect();
        let images = v.iter().map(|e| self.delta(e)).collect::<Result<Vec<_>>>()?;
        // cycles modulo the relation ideal one degree up
        let mut next_ideal = Echelon::new();
        if !relations.is_empty() {
            let top = images.iter().flat_map(|e| e.terms().map(|(m, _)| m.order())).max().unwrap_or(0);
            for r in self.ideal_slice(relations, degree + 1, weight, top) {
                next_ideal.insert(&r);
            }
        }
        let reduced: Vec<Element> = images.iter().map(|e| next_ideal.reduce(e)).collect();
        let cycles = linalg::kernel(&v, &reduced);

        let src_order = order + pad;
        let mut gens: Vec<Element> = Vec::new();
        for m in self.graded_piece(degree - 1, weight, src_order).basis {
            gens.push(self.delta(&Element::monomial(m))?);
        }
        gens.extend(self.ideal_slice(relations, degree, weight, src_order));
        let high: Vec<Element> = gens.iter().map(|g| g.filter(|m| m.order() > order)).collect();
        let mut boundaries = Echelon::new();
        for b in linalg::kernel(&gens, &high) {
            boundaries.insert(&b);
        }
        Ok(SliceData { cycles, boundaries })
    }

    fn slice_homology_fixed(&self, relations: &[Element], degree: i64, weight: i64, order: u32, pad: u32) -> Result<(usize, Vec<Element>, Echelon)> {
        let data = self.slice_data(relations, degree, weight, order, pad)?;
        let mut ech = data.boundaries.clone();
        let mut reps = Vec::new();
        for z in &data.cycles {
            if ech.insert(z) {
                reps.push(z.clone());
            }
        }
        Ok((reps.len(), reps, data.boundaries))
    }

    fn in_degree_window(&self, degree: i64) -> Option<bool> {
        let (lo, hi) = self.truncation.degree_window?;
        Some(degree > lo && degree <= hi)
    }

    /// Homology at `(degree, weight)` starting from polynomial order `max_order`.
    ///
    /// Truncated algebras are computed exactly at their order bound. Otherwise
    /// the boundary sources are padded until the boundary space stops growing,
    /// and the order is raised until two consecutive answers agree.
    pub fn homology(&self, degree: i64, weight: i64, max_order: u32) -> Result<Homology> {
        self.homology_with(&[], degree, weight, max_order, HomologyOptions::default())
    }

    pub fn homology_with(&self, relations: &[Element], degree: i64, weight: i64, max_order: u32, opts: HomologyOptions) -> Result<Homology> {
        if let Some(false) = self.in_degree_window(degree) {
            return Ok(Homology { degree, weight, dimension: 0, representatives: Vec::new(), order_used: max_order, padding: 0 });
        }
        if self.truncation.max_order.is_some() {
            let (dim, reps, _) = self.slice_homology_fixed(relations, degree, weight, max_order, 0)?;
            let order_used = self.effective_order(max_order);
            return Ok(Homology { degree, weight, dimension: dim, representatives: reps, order_used, padding: 0 });
        }
        let ceiling = max_order + opts.ceiling;
        let raise = self.max_delta_raise().max(1);
        let mut previous: Option<(usize, Vec<Element>, u32, u32)> = None;
        for order in max_order..=ceiling {
            let mut last_rank = None;
            let mut found = None;
            for pad in (0..=opts.ceiling * raise).step_by(raise as usize) {
                let (dim, reps, b) = self.slice_homology_fixed(relations, degree, weight, order, pad)?;
                if last_rank == Some(b.rank()) {
                    found = Some((dim, reps, pad));
                    break;
                }
                last_rank = Some(b.rank());
            }
            let Some((dim, reps, pad)) = found else {
                return Err(Error::UnstableTruncation { ceiling });
            };
            if let Some((pdim, preps, porder, ppad)) = previous.take() {
                if pdim == dim {
                    return Ok(Homology { degree, weight, dimension: pdim, representatives: preps, order_used: porder, padding: ppad });
                }
            }
            previous = Some((dim, reps, order, pad));
        }
        Err(Error::NonFinite { degree, weight })
    }

    /// Weights occurring in the degree slice up to the given order.
    pub fn weights_in_degree(&self, degree: i64, max_order: u32) -> BTreeSet<i64> {
        let bound = MonomialBound { max_order: self.effective_order(max_order), ..Default::default() };
        enumerate_monomials(&self.generators, &bound, |m| m.degree() == degree && self.truncation.allows(m))
            .iter()
            .map(Monomial::weight)
            .collect()
    }

    /// The quotient by the ideal generated by weights outside `[r, s]`, with its quotient map.
    pub fn weight_truncate(&self, r: i64, s: i64) -> Result<(FreeWCDGA, BTreeMap<Generator, Element>)> {
        if r > 0 || s < 0 {
            return Err(Error::InvalidInput(format!("weight window [{r}, {s}] must contain 0")));
        }
        let window = Truncation { weight_window: Some((r, s)), ..Truncation::default() };
        let mut out = self.clone();
        out.truncation = self.truncation.meet(&window);
        let images: BTreeMap<Generator, Element> = self
            .generators
            .iter()
            .map(|g| (g.clone(), out.truncation.apply(&Element::generator(g))))
            .collect();
        for g in &self.generators {
            if let Some(img) = self.differential.image(g) {
                out.differential.set(g, out.truncation.apply(img));
            }
        }
        Ok((out, images))
    }

    /// Largest chain degree of a nonzero monomial, if bounded.
    fn top_chain_degree(&self) -> Option<i64> {
        let mut total = 0;
        for g in &self.generators {
            let chain = -g.degree();
            if chain > 0 {
                if !g.is_odd() {
                    return None;
                }
                total += chain;
            }
        }
        Some(total)
    }

    /// Quotient by the good truncation `τ_{>k}`: chain degrees above `k + 1`
    /// vanish and chain degree `k + 1` is replaced by its image under `δ`.
    pub fn postnikov_truncate(&self, k: u32) -> Result<FreeWCDGA> {
        if self.generators.iter().any(|g| g.degree() > 0) {
            return Err(Error::InvalidInput("Postnikov truncation needs non-negative chain degrees".into()));
        }
        if self.top_chain_degree().is_some_and(|top| top <= k as i64) {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        out.nonneg_chain = true;
        out.truncation.degree_window = Some((-(k as i64) - 1, i64::MAX));
        Ok(out)
    }

    /// Whether a generator map into `target` commutes with the differentials.
    pub fn check_map(&self, target: &FreeWCDGA, images: &BTreeMap<Generator, Element>) -> Result<()> {
        for g in &self.generators {
            let img = images.get(g).cloned().unwrap_or_else(|| Element::generator(g));
            let lhs = apply_map(images, &self.delta(&Element::generator(g))?, &target.truncation);
            let rhs = target.delta(&img)?;
            let residue = &lhs - &rhs;
            if !residue.is_zero() {
                return Err(Error::NotAMap { generator: g.label(), residue });
            }
            if img.terms().any(|(m, _)| m.weight() != g.weight() || m.degree() != g.degree()) {
                return Err(Error::NotAMap { generator: g.label(), residue: img });
            }
        }
        Ok(())
    }
}

/// Apply an algebra map given on generators.
pub fn apply_map(images: &BTreeMap<Generator, Element>, a: &Element, t: &Truncation) -> Element {
    a.substitute(images, t)
}

impl QuotientTarget {
    pub fn homology(&self, degree: i64, weight: i64, max_order: u32) -> Result<Homology> {
        self.algebra.homology_with(&self.relations, degree, weight, max_order, HomologyOptions::default())
    }

    fn check(&self) -> Result<()> {
        for r in &self.relations {
            let (Some(_), Some(_)) = (r.degree(), r.weight()) else {
                return Err(Error::InvalidInput(format!("relation {r} is not homogeneous")));
            };
            let orders: BTreeSet<u32> = r.terms().map(|(m, _)| m.order()).collect();
            if orders.len() > 1 {
                return Err(Error::InvalidInput(format!("relation {r} is not homogeneous in order")));
            }
            if !self.algebra.delta(r)?.is_zero() {
                return Err(Error::NotClosed(r.clone()));
            }
        }
        Ok(())
    }
}

/// Options for [`quasi_free_resolution`].
#[derive(Clone, Copy, Debug)]
pub struct ResolutionOptions {
    /// Largest polynomial order scanned for homology to kill.
    pub max_order: u32,
    pub homology: HomologyOptions,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions { max_order: 6, homology: HomologyOptions::default() }
    }
}

/// Tate-style resolution: in each chain degree `k`, adjoin generators in chain
/// degree `k + 1` whose differentials are cycles spanning the kernel of
/// `H_k(C) → H_k(target)`, scanning slices by increasing order.
pub fn quasi_free_resolution(target: &QuotientTarget, up_to_chain_degree: u32, opts: ResolutionOptions) -> Result<Resolution> {
    target.check()?;
    let tgt = &target.algebra;
    let mut c = tgt.clone();
    let mut map: BTreeMap<Generator, Element> = tgt.generators.iter().map(|g| (g.clone(), Element::generator(g))).collect();
    let mut added = Vec::new();
    for k in 0..=up_to_chain_degree as i64 {
        let degree = -k;
        for order in 1..=opts.max_order {
            let weights = c.weights_in_degree(degree, order);
            for w in weights {
                let data = c.slice_data(&[], degree, w, order, opts.homology.ceiling)?;
                // classes of C whose image is zero in the target's homology
                let (_, _, tgt_boundaries) = tgt.slice_homology_fixed(&target.relations, degree, w, order + opts.homology.ceiling, opts.homology.ceiling)?;
                let images: Vec<Element> = data.cycles.iter().map(|z| tgt_boundaries.reduce(&apply_map(&map, z, &tgt.truncation))).collect();
                let killed = linalg::kernel(&data.cycles, &images);
                let mut ech = data.boundaries.clone();
                for z in killed {
                    if !ech.insert(&z) {
                        continue;
                    }
                    let name = format!("e{}_{}", k + 1, added.len());
                    let g = Generator::new(&name, degree - 1, w);
                    let lift = lift_boundary(tgt, &target.relations, &apply_map(&map, &z, &tgt.truncation), degree, w, order + opts.homology.ceiling)?;
                    c.generators.push(g.clone());
                    c.differential.set(&g, z);
                    map.insert(g.clone(), lift);
                    added.push(g);
                }
            }
        }
    }
    Ok(Resolution { algebra: c, map, added })
}

/// An element `t` with `δt ≡ b` modulo relations.
fn lift_boundary(a: &FreeWCDGA, relations: &[Element], b: &Element, degree: i64, weight: i64, order: u32) -> Result<Element> {
    if b.is_zero() {
        return Ok(Element::zero());
    }
    let sources: Vec<Element> = a.graded_piece(degree - 1, weight, order).basis.into_iter().map(Element::monomial).collect();
    let mut columns = sources.iter().map(|s| a.delta(s)).collect::<Result<Vec<_>>>()?;
    let ideal = a.ideal_slice(relations, degree, weight, order);
    let n = columns.len();
    columns.extend(ideal);
    let coeffs = linalg::solve(&columns, b).ok_or_else(|| Error::InvalidInput(format!("{b} is not a boundary in the target")))?;
    let mut out = Element::zero();
    for (s, c) in sources.iter().zip(&coeffs[..n]) {
        out += &s.scale(c);
    }
    Ok(out)
}

/// Compare homology of a resolution with its target slice by slice.
pub fn compare_resolution(res: &Resolution, target: &QuotientTarget, chain_degrees: std::ops::RangeInclusive<u32>, max_order: u32) -> Result<Vec<SliceComparison>> {
    let mut out = Vec::new();
    for k in chain_degrees {
        let degree = -(k as i64);
        let mut weights = res.algebra.weights_in_degree(degree, max_order);
        weights.extend(target.algebra.weights_in_degree(degree, max_order));
        if weights.is_empty() {
            // nothing in this chain degree; record the empty slice
            weights.insert(0);
        }
        for w in weights {
            let src = res.algebra.homology(degree, w, max_order)?;
            let tgt = target.homology(degree, w, max_order)?;
            let top = src
                .representatives
                .iter()
                .map(|z| apply_map(&res.map, z, &target.algebra.truncation))
                .flat_map(|e| e.terms().map(|(m, _)| m.order()).collect::<Vec<_>>())
                .max()
                .unwrap_or(0)
                .max(tgt.order_used);
            let (_, _, boundaries) = target.algebra.slice_homology_fixed(&target.relations, degree, w, top, HomologyOptions::default().ceiling)?;
            let mut ech = boundaries;
            let base = ech.rank();
            for z in &src.representatives {
                ech.insert(&apply_map(&res.map, z, &target.algebra.truncation));
            }
            out.push(SliceComparison {
                degree,
                weight: w,
                source_dimension: src.dimension,
                target_dimension: tgt.dimension,
                rank: ech.rank() - base,
            });
        }
    }
    Ok(out)
}

/// Products of `n` nonzero-weight generators; they generate `(𝒲_{≠0})ⁿ`.
pub fn nonzero_weight_power(gens: &[Generator], n: u32) -> Vec<Monomial> {
    let nz: Vec<Generator> = gens.iter().filter(|g| g.weight() != 0).cloned().collect();
    let bound = MonomialBound { max_order: n, ..Default::default() };
    enumerate_monomials(&nz, &bound, |m| m.order() == n)
}

/// Membership of a monomial in the ideal generated by weights `≤ lo` or `≥ hi`.
pub fn in_weight_tail_ideal(m: &Monomial, lo: i64, hi: i64) -> bool {
    let (neg, pos) = m.divisor_weight_range();
    neg <= lo || pos >= hi
}

/// Whether `(𝒲_{≠0})ⁿ ⊆ (𝒲_{<−n/2}, 𝒲_{>n/2})`, with the first failing generator.
pub fn weight_power_in_strict_tail(gens: &[Generator], n: u32) -> std::result::Result<(), Monomial> {
    // w < −n/2 ⇔ 2w ≤ −n−1 ⇔ w ≤ ⌊(−n−1)/2⌋, and symmetrically.
    let lo = (-(n as i64) - 1).div_euclid(2);
    let hi = (n as i64 + 2).div_euclid(2);
    check_tail(gens, n, lo, hi)
}

/// Whether `(𝒲_{≠0})ⁿ ⊆ (𝒲_{≤−⌈n/2⌉}, 𝒲_{≥⌈n/2⌉})`.
pub fn weight_power_in_ceil_tail(gens: &[Generator], n: u32) -> std::result::Result<(), Monomial> {
    let c = (n as i64 + 1) / 2;
    check_tail(gens, n, -c, c)
}

fn check_tail(gens: &[Generator], n: u32, lo: i64, hi: i64) -> std::result::Result<(), Monomial> {
    match nonzero_weight_power(gens, n).into_iter().find(|m| !in_weight_tail_ideal(m, lo, hi)) {
        Some(m) => Err(m),
        None => Ok(()),
    }
}

/// Convenience: polynomial generator of degree 0 and weight 0.
pub fn poly_gen(name: &str) -> Generator {
    Generator::new(name, 0, 0)
}

pub fn sign_of(k: i64) -> crate::scalar::Scalar {
    scalar::sign(k)
}
