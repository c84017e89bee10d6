use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftsym::algebra::{Element, Generator, Kind, Truncation};
use shiftsym::cdga::{self, FreeWCDGA, MonomialBound};
use shiftsym::derham;
use shiftsym::sample::Sampler;
use shiftsym::scalar::{int, sign};

fn mixed() -> Vec<Generator> {
    vec![
        Generator::with_kind(Kind::Base, "a", 0, 1),
        Generator::with_kind(Kind::Base, "b", 1, 0),
        Generator::with_kind(Kind::Base, "c", -1, -1),
        Generator::with_kind(Kind::Base, "e", 2, 2),
    ]
}

fn sampler(gens: &[Generator], order: u32) -> Sampler {
    Sampler::new(gens, &MonomialBound { max_order: order, ..Default::default() }, &Truncation::none())
}

fn deg(e: &Element) -> i64 {
    e.degree().unwrap_or(0)
}

/// `f = x^i y^j + c x`, a degree-zero potential on the plane.
fn cotangent(i: u32, j: u32, c: i64, n: i64) -> FreeWCDGA {
    let b = FreeWCDGA::new(vec![cdga::poly_gen("x"), cdga::poly_gen("y")]);
    let f = &b.gen("x").pow(i).mul(&b.gen("y").pow(j)) + &b.gen("x").scale(&int(c));
    derham::generate_twisted_cotangent(&b, &f, n, 0).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sampler(&mixed(), 3);
        let (p, q, r) = (s.homogeneous(&mut rng, 3), s.homogeneous(&mut rng, 3), s.homogeneous(&mut rng, 3));
        prop_assert_eq!(p.mul(&q), q.mul(&p).scale(&sign(deg(&p) * deg(&q))));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&(&q + &r)), &p.mul(&q) + &p.mul(&r));
        prop_assert_eq!(p.mul(&Element::one()), p.clone());
    }

    #[test]
    fn odd_elements_square_to_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sampler(&mixed(), 3);
        let p = s.homogeneous(&mut rng, 4);
        if deg(&p) % 2 != 0 {
            prop_assert!(p.mul(&p).is_zero());
        }
    }

    #[test]
    fn truncation_is_multiplicative(seed in any::<u64>(), order in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sampler(&mixed(), 3);
        let t = Truncation::order(order);
        let (p, q) = (s.any(&mut rng, 4), s.any(&mut rng, 4));
        prop_assert_eq!(t.apply(&p.mul(&q)), p.mul_truncated(&q, &t));
        prop_assert_eq!(t.apply(&t.apply(&p).mul(&t.apply(&q))), t.apply(&p.mul(&q)));
    }

    #[test]
    fn twisted_cotangent_differential(i in 0u32..3, j in 0u32..3, c in -2i64..3, seed in any::<u64>()) {
        let a = cotangent(i, j, c, -1);
        prop_assert!(a.validate().is_valid());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sampler(&a.generators, 3);
        let (p, q) = (s.homogeneous(&mut rng, 3), s.homogeneous(&mut rng, 3));
        // Leibniz with the Koszul sign and δ² = 0
        let lhs = a.delta(&p.mul(&q)).unwrap();
        let rhs = &a.delta(&p).unwrap().mul(&q) + &p.mul(&a.delta(&q).unwrap()).scale(&sign(deg(&p)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.delta(&a.delta(&p).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn de_rham_total_differential(i in 0u32..3, j in 0u32..3, c in -2i64..3, seed in any::<u64>()) {
        let a = cotangent(i, j, c, -1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sampler(&derham::dr_generators(&a), 3);
        let p = s.homogeneous(&mut rng, 3);
        let q = s.homogeneous(&mut rng, 2);
        let dd = derham::dr_differential(&a, &derham::dr_differential(&a, &p).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
        prop_assert!(derham::d(&derham::d(&p)).is_zero());
        let lhs = derham::d(&p.mul(&q));
        let rhs = &derham::d(&p).mul(&q) + &p.mul(&derham::d(&q)).scale(&sign(deg(&p)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_forms_are_presymplectic(i in 1u32..3, skip in 0usize..6, take in 1usize..5) {
        let a = cotangent(i, 1, 0, -1);
        let s = sampler(&derham::dr_generators(&a), 4);
        // degree n + 1 = 0, so D β has the degree of a (−1)-shifted form
        let slice: Vec<_> = s
            .slices()
            .filter(|((d, w), _)| *d == 0 && *w == 0)
            .flat_map(|(_, ms)| ms.iter().filter(|m| (2..=3).contains(&m.form_order())))
            .collect();
        prop_assume!(!slice.is_empty());
        let beta: Element = slice.iter().cycle().skip(skip).take(take).map(|m| Element::monomial((*m).clone())).fold(Element::zero(), |x, y| &x + &y);
        let total = derham::dr_differential(&a, &beta).unwrap();
        let w = derham::PreSymplectic::from_total(-1, 0, &total, 4);
        prop_assert!(derham::check_presymplectic(&a, &w).unwrap().is_valid());
    }

    #[test]
    fn weight_truncation_is_a_quotient_map(r in -3i64..=0, t in 0i64..=3, seed in any::<u64>()) {
        let base = FreeWCDGA::new(vec![
            Generator::with_kind(Kind::Base, "u", 0, -1),
            Generator::with_kind(Kind::Base, "v", 0, 1),
            Generator::with_kind(Kind::Base, "t", -1, 0),
        ]);
        let a = base.clone().with_differential("t", base.gen("u").mul(&base.gen("v")));
        let (out, images) = a.weight_truncate(r, t).unwrap();
        prop_assert!(out.validate().is_valid());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sampler(&a.generators, 4);
        let (p, q) = (s.any(&mut rng, 4), s.any(&mut rng, 4));
        let map = |e: &Element| cdga::apply_map(&images, e, &out.truncation);
        prop_assert_eq!(map(&p.mul(&q)), out.truncation.apply(&map(&p).mul(&map(&q))));
        prop_assert_eq!(out.delta(&map(&p)).unwrap(), map(&a.delta(&p).unwrap()));
        for (m, _) in map(&p).terms() {
            let (lo, hi) = m.divisor_weight_range();
            prop_assert!(r <= lo && hi <= t);
        }
    }

    #[test]
    fn ceiling_weight_lemma(n in 1u32..6, w1 in -2i64..3, w2 in -2i64..3) {
        let gens = vec![
            Generator::with_kind(Kind::Base, "u", 0, w1),
            Generator::with_kind(Kind::Base, "v", 0, w2),
            Generator::with_kind(Kind::Base, "s", 0, 1),
        ];
        prop_assert!(cdga::weight_power_in_ceil_tail(&gens, n).is_ok());
    }
}
