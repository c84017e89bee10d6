use shiftsym::algebra::Element;
use shiftsym::cdga::{compare_resolution, poly_gen, quasi_free_resolution, FreeWCDGA, QuotientTarget, ResolutionOptions};

fn truncated_polynomial(k: u32) -> QuotientTarget {
    let a = FreeWCDGA::new(vec![poly_gen("x")]);
    let x = a.gen("x");
    QuotientTarget { relations: vec![x.pow(k)], algebra: a }
}

#[test]
fn truncated_polynomials_need_one_generator() {
    for k in 2..5 {
        let target = truncated_polynomial(k);
        let opts = ResolutionOptions { max_order: 6, ..Default::default() };
        let res = quasi_free_resolution(&target, 3, opts).unwrap();
        assert_eq!(res.added.len(), 1, "k = {k}");
        assert_eq!(target.homology(0, 0, 6).unwrap().dimension, k as usize);
        assert!(compare_resolution(&res, &target, 0..=3, 6).unwrap().iter().all(|c| c.is_iso()));
    }
}

#[test]
fn fat_point_in_the_plane() {
    // (x², xy, y²) has three relations among two variables; the Koszul
    // complex on them has homology, so the resolution needs more generators.
    let a = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y")]);
    let (x, y) = (a.gen("x"), a.gen("y"));
    let target = QuotientTarget { relations: vec![x.mul(&x), x.mul(&y), y.mul(&y)], algebra: a };
    assert_eq!(target.homology(0, 0, 5).unwrap().dimension, 3);
    let opts = ResolutionOptions { max_order: 5, ..Default::default() };
    let res = quasi_free_resolution(&target, 2, opts).unwrap();
    let in_degree = |d: i64| res.added.iter().filter(|g| g.degree() == d).count();
    assert_eq!(in_degree(-1), 3);
    assert_eq!(in_degree(-2), 2);
    let slices = compare_resolution(&res, &target, 0..=2, 5).unwrap();
    assert!(slices.iter().all(|c| c.is_iso()), "{slices:?}");
    assert!(res.algebra.validate().is_valid());
    assert!(res.map.values().all(|e: &Element| e.degree().unwrap_or(0) == 0));
}
