use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftsym::algebra::{Element, Generator, Kind, Truncation};
use shiftsym::cdga::{FreeWCDGA, MonomialBound};
use shiftsym::polyvector::{filtration_level, PolyContext};
use shiftsym::sample::Sampler;
use shiftsym::scalar::sign;

fn context(n: i64, m: i64, odd: bool) -> PolyContext {
    let mut gens = vec![Generator::with_kind(Kind::Base, "u", 0, -1), Generator::with_kind(Kind::Base, "v", 0, 1)];
    if odd {
        gens.push(Generator::with_kind(Kind::Base, "t", -1, 0));
    }
    PolyContext::new(FreeWCDGA::new(gens), n, m, None)
}

fn triple(ctx: &PolyContext, seed: u64) -> (Element, Element, Element) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Sampler::new(&ctx.generators(), &MonomialBound { max_order: 3, ..Default::default() }, &Truncation::none());
    (s.homogeneous(&mut rng, 2), s.homogeneous(&mut rng, 2), s.homogeneous(&mut rng, 2))
}

fn deg(e: &Element) -> i64 {
    e.degree().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graded_antisymmetry(n in -2i64..3, m in -1i64..2, odd in any::<bool>(), seed in any::<u64>()) {
        let ctx = context(n, m, odd);
        let (p, q, _) = triple(&ctx, seed);
        let s = ctx.shift();
        let e = sign((deg(&p) + s) * (deg(&q) + s));
        prop_assert_eq!(ctx.schouten(&p, &q).unwrap(), ctx.schouten(&q, &p).unwrap().scale(&-e));
    }

    #[test]
    fn jacobi(n in -2i64..3, m in -1i64..2, odd in any::<bool>(), seed in any::<u64>()) {
        let ctx = context(n, m, odd);
        let (p, q, r) = triple(&ctx, seed);
        let s = ctx.shift();
        let e = sign((deg(&p) + s) * (deg(&q) + s));
        let lhs = ctx.schouten(&p, &ctx.schouten(&q, &r).unwrap()).unwrap();
        let rhs = &ctx.schouten(&ctx.schouten(&p, &q).unwrap(), &r).unwrap() + &ctx.schouten(&q, &ctx.schouten(&p, &r).unwrap()).unwrap().scale(&e);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn biderivation(n in -2i64..3, odd in any::<bool>(), seed in any::<u64>()) {
        let ctx = context(n, 0, odd);
        let (p, q, r) = triple(&ctx, seed);
        let e = sign((deg(&p) + ctx.shift()) * deg(&q));
        let lhs = ctx.schouten(&p, &q.mul(&r)).unwrap();
        let rhs = &ctx.schouten(&p, &q).unwrap().mul(&r) + &q.mul(&ctx.schouten(&p, &r).unwrap()).scale(&e);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_weight_and_filtration(n in -2i64..3, m in -1i64..2, odd in any::<bool>(), seed in any::<u64>()) {
        let ctx = context(n, m, odd);
        let (p, q, _) = triple(&ctx, seed);
        let b = ctx.schouten(&p, &q).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(b.degree(), Some(deg(&p) + deg(&q) - (n + 1)));
            prop_assert_eq!(b.weight(), Some(p.weight().unwrap() + q.weight().unwrap() - m));
            let (fi, fj, fb) = (filtration_level(&p).unwrap(), filtration_level(&q).unwrap(), filtration_level(&b).unwrap());
            prop_assert!(fb + 1 >= fi + fj);
        }
    }

    #[test]
    fn bracket_with_functions(n in -2i64..3, seed in any::<u64>()) {
        // two functions always commute
        let ctx = context(n, 0, true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Sampler::new(&ctx.base.generators, &MonomialBound { max_order: 3, ..Default::default() }, &Truncation::none());
        let (f, g) = (s.homogeneous(&mut rng, 3), s.homogeneous(&mut rng, 3));
        prop_assert!(ctx.schouten(&f, &g).unwrap().is_zero());
    }
}
