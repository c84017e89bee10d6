use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftsym::algebra::{Element, Generator, Kind, Truncation};
use shiftsym::cdga::{FreeWCDGA, MonomialBound};
use shiftsym::derham;
use shiftsym::dgla::Dgla;
use shiftsym::instances;
use shiftsym::io::{self, Document, Record, Symbols, Workspace};
use shiftsym::polyvector::PolyContext;
use shiftsym::sample::Sampler;

fn document(entities: Vec<Record>) -> Document {
    Document { format_version: io::FORMAT_VERSION.into(), entities }
}

fn random_algebra(seed: u64, order: u32) -> FreeWCDGA {
    // δt = random element of degree 0 and weight 0 in u, v
    let base = FreeWCDGA::new(vec![
        Generator::with_kind(Kind::Base, "u", 0, -1),
        Generator::with_kind(Kind::Base, "v", 0, 1),
        Generator::with_kind(Kind::Base, "t", -1, 0),
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Sampler::new(&base.generators[..2], &MonomialBound { max_order: 4, ..Default::default() }, &Truncation::none());
    let img = s.in_slice(&mut rng, (0, 0), 3);
    base.with_differential("t", img).with_truncation(Truncation::order(order))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn elements_round_trip(seed in any::<u64>(), ctx_n in -2i64..2) {
        let a = random_algebra(seed, 5);
        let ctx = PolyContext::new(a.clone(), ctx_n, 0, None);
        let mut gens = derham::dr_generators(&a);
        gens.extend(ctx.generators());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let s = Sampler::new(&gens, &MonomialBound { max_order: 3, ..Default::default() }, &Truncation::none());
        let e = s.any(&mut rng, 5);
        let symbols = Symbols::for_algebra(&a, Some(&ctx));
        prop_assert_eq!(symbols.element(&io::encode(&e)).unwrap(), e);
    }

    #[test]
    fn algebra_documents_round_trip(seed in any::<u64>(), order in 2u32..6) {
        let a = random_algebra(seed, order);
        let doc = document(vec![Record::Algebra(io::algebra_record("a", &a, &[]))]);
        let text = io::print(&doc);
        let back = io::parse(&text).unwrap();
        prop_assert_eq!(io::print(&back), text);
        let ws = Workspace::new(&back);
        let b = ws.algebra("a").unwrap();
        prop_assert_eq!(&b.generators, &a.generators);
        prop_assert_eq!(&b.truncation, &a.truncation);
        for g in &a.generators {
            prop_assert_eq!(b.delta(&Element::generator(g)).unwrap(), a.delta(&Element::generator(g)).unwrap());
        }
    }

    #[test]
    fn dgla_documents_round_trip(k in 1usize..5) {
        let (g, kp) = instances::sl2();
        let cases: Vec<(Dgla, Option<shiftsym::dgla::CyclicPairing>)> = vec![
            (g.clone(), Some(kp.clone())),
            (instances::abelian_identity(k).0, Some(instances::abelian_identity(k).1)),
            (instances::two_term_complex(), None),
            (instances::surface_dgla(&g, &kp).0, Some(instances::surface_dgla(&g, &kp).1)),
        ];
        for (l, p) in cases {
            let mut entities = vec![Record::Dgla(io::dgla_record("L", &l))];
            if let Some(p) = &p {
                entities.push(Record::Pairing(io::pairing_record("P", "L", &l, p)));
            }
            let back = io::parse(&io::print(&document(entities))).unwrap();
            let ws = Workspace::new(&back);
            prop_assert_eq!(&ws.dgla("L").unwrap(), &l);
            if let Some(p) = p {
                prop_assert_eq!(ws.pairing("P").unwrap().1, p);
            }
        }
    }
}
