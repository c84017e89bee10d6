//! Seeded random elements for the randomized law suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Element, Generator, Monomial, Truncation};
use crate::cdga::{enumerate_monomials, MonomialBound};
use crate::scalar::{ratio, Scalar};

/// Monomials of a bounded region grouped by `(degree, weight)`.
#[derive(Clone, Debug)]
pub struct Sampler {
    slices: BTreeMap<(i64, i64), Vec<Monomial>>,
    keys: Vec<(i64, i64)>,
}

impl Sampler {
    pub fn new(gens: &[Generator], bound: &MonomialBound, truncation: &Truncation) -> Self {
        let mut slices: BTreeMap<(i64, i64), Vec<Monomial>> = BTreeMap::new();
        for m in enumerate_monomials(gens, bound, |m| truncation.allows(m)) {
            slices.entry((m.degree(), m.weight())).or_default().push(m);
        }
        let keys = slices.keys().copied().collect();
        Sampler { slices, keys }
    }

    pub fn slices(&self) -> impl Iterator<Item = (&(i64, i64), &Vec<Monomial>)> {
        self.slices.iter()
    }

    pub fn coefficient<R: Rng>(rng: &mut R) -> Scalar {
        let num = loop {
            let n = rng.gen_range(-4i64..=4);
            if n != 0 {
                break n;
            }
        };
        let den = if rng.gen_bool(0.2) { rng.gen_range(2i64..=3) } else { 1 };
        ratio(num, den)
    }

    /// A random element of one slice with up to `terms` terms.
    pub fn in_slice<R: Rng>(&self, rng: &mut R, key: (i64, i64), terms: usize) -> Element {
        let Some(pool) = self.slices.get(&key) else {
            return Element::zero();
        };
        let mut out = Element::zero();
        for _ in 0..rng.gen_range(1..=terms.max(1)) {
            let m = pool.choose(rng).expect("nonempty slice").clone();
            out.add_term(m, Self::coefficient(rng));
        }
        out
    }

    /// A random homogeneous element from a random slice.
    pub fn homogeneous<R: Rng>(&self, rng: &mut R, terms: usize) -> Element {
        let key = *self.keys.choose(rng).expect("sampler has monomials");
        self.in_slice(rng, key, terms)
    }

    /// A random inhomogeneous element.
    pub fn any<R: Rng>(&self, rng: &mut R, terms: usize) -> Element {
        let mut out = Element::zero();
        for _ in 0..rng.gen_range(1..=terms.max(1)) {
            out += &self.homogeneous(rng, 1);
        }
        out
    }
}
