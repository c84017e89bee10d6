//! Worked examples shared by tests, the acceptance suite and `shiftsym selftest`.

use crate::algebra::{Element, Generator, Kind, Truncation};
use crate::cdga::{poly_gen, FreeWCDGA, QuotientTarget};
use crate::derham::{self, PreSymplectic};
use crate::dgla::{BasisVector, CyclicPairing, Dgla};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::polyvector::PolyContext;
use crate::scalar::{int, one, zero, Scalar};

fn basis(name: &str, degree: i64) -> BasisVector {
    BasisVector { name: name.into(), degree, weight: 0 }
}

/// `span{x, p}` in degree 1, abelian, with `⟨x, p⟩ = 1 = −⟨p, x⟩` and `d = 2`.
/// Its Chevalley–Eilenberg algebra is `Q[x, p]`.
pub fn canonical_pair() -> (Dgla, CyclicPairing) {
    let l = Dgla::new(vec![basis("x", 1), basis("p", 1)]);
    let g = Matrix::from_rows(vec![vec![zero(), one()], vec![-one(), zero()]]);
    (l, CyclicPairing { matrix: g, d: 2, weight: 0 })
}

/// `sl₂` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h` and its Killing form.
pub fn sl2() -> (Dgla, CyclicPairing) {
    let mut l = Dgla::new(vec![basis("h", 0), basis("e", 0), basis("f", 0)]);
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

/// `k` abelian degree-zero vectors with the identity pairing.
pub fn abelian_identity(k: usize) -> (Dgla, CyclicPairing) {
    let l = Dgla::new((0..k).map(|i| basis(&format!("a{}", i + 1), 0)).collect());
    (l, CyclicPairing { matrix: Matrix::identity(k), d: 0, weight: 0 })
}

/// The two-term complex `u ↦ v` as an abelian DGLA.
pub fn two_term_complex() -> Dgla {
    let mut l = Dgla::new(vec![basis("u", 0), basis("v", 1)]);
    l.set_differential(0, &[(1, one())]);
    l
}

/// `span{x, y}`, `|x| = 1`, `|y| = 2`, `[x, x] = y`, `δ = 0`: `H²` is spanned by `y`.
pub fn square_bracket() -> Dgla {
    let mut l = Dgla::new(vec![basis("x", 1), basis("y", 2)]);
    l.set_bracket(0, 0, &[(1, one())]);
    l
}

/// `Q[ε]/ε^{order+1}` with `ε` of degree and weight zero.
pub fn truncated_line(order: u32) -> FreeWCDGA {
    FreeWCDGA::new(vec![poly_gen("eps")]).with_truncation(Truncation::order(order))
}

/// A Δ-complex structure on the closed genus-two surface.
///
/// The octagon with boundary word `a₁ b₁ ā₁ b̄₁ a₂ b₂ ā₂ b̄₂` is fanned from
/// its first corner. All corners become one vertex; the nine edges are the
/// four sides and the five diagonals.
#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    pub edges: Vec<&'static str>,
    /// Each triangle as `(edge 01, edge 12, edge 02, orientation sign)`.
    pub triangles: Vec<(usize, usize, usize, i64)>,
}

impl SurfaceComplex {
    pub fn genus_two() -> Self {
        let edges = vec!["a1", "b1", "a2", "b2", "d2", "d3", "d4", "d5", "d6"];
        let e = |n: &str| edges.iter().position(|x| *x == n).unwrap();
        let triangles = vec![
            (e("a1"), e("b1"), e("d2"), 1),
            (e("d3"), e("a1"), e("d2"), -1),
            (e("d4"), e("b1"), e("d3"), -1),
            (e("d4"), e("a2"), e("d5"), 1),
            (e("d5"), e("b2"), e("d6"), 1),
            (e("b2"), e("a2"), e("d6"), -1),
        ];
        SurfaceComplex { edges, triangles }
    }

    /// `δ: C¹ → C²`, rows indexed by triangles.
    pub fn coboundary(&self) -> Matrix {
        let mut m = Matrix::zeros(self.triangles.len(), self.edges.len());
        for (t, &(e01, e12, e02, _)) in self.triangles.iter().enumerate() {
            for (e, s) in [(e12, 1), (e02, -1), (e01, 1)] {
                let v = m.get(t, e) + int(s);
                m.set(t, e, v);
            }
        }
        m
    }

    /// Alexander–Whitney cup product of two 1-cochains, integrated over the fundamental cycle.
    pub fn integrate_cup(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.triangles
            .iter()
            .map(|&(e01, e12, _, s)| &u[e01] * &v[e12] * int(s))
            .sum()
    }

    /// `H¹` representatives (every 1-cocycle, since there is one vertex).
    pub fn h1(&self) -> Vec<Vec<Scalar>> {
        self.coboundary().nullspace()
    }

    /// The intersection matrix on `H¹`.
    pub fn intersection(&self) -> Matrix {
        let h = self.h1();
        Matrix::from_rows(h.iter().map(|u| h.iter().map(|v| self.integrate_cup(u, v)).collect()).collect())
    }
}

/// `H*(Σ₂) ⊗ g` with bracket `(uv) ⊗ [s, t]` and pairing `∫uv · K(s, t)`, `d = 2`.
pub fn surface_dgla(g: &Dgla, k: &CyclicPairing) -> (Dgla, CyclicPairing) {
    let surface = SurfaceComplex::genus_two();
    let q = surface.intersection();
    let h1 = q.rows();
    // cohomology basis: 1, a_1..a_h1, ω
    let mut coh: Vec<(String, i64)> = vec![("1".into(), 0)];
    coh.extend((0..h1).map(|i| (format!("c{}", i + 1), 1)));
    coh.push(("w".into(), 2));
    let top = coh.len() - 1;
    // product table: u·v = Σ coefficient · basis
    let product = |i: usize, j: usize| -> Option<(usize, Scalar)> {
        match (coh[i].1, coh[j].1) {
            (0, _) => Some((j, one())),
            (_, 0) => Some((i, one())),
            (1, 1) => Some((top, q.get(i - 1, j - 1).clone())),
            _ => None,
        }
    };
    let integral = |i: usize, j: usize| -> Scalar {
        match product(i, j) {
            Some((t, c)) if t == top => c,
            _ => zero(),
        }
    };
    let gd = g.dim();
    let idx = |i: usize, s: usize| i * gd + s;
    let mut vectors = Vec::new();
    for (cname, cdeg) in &coh {
        for b in &g.basis {
            vectors.push(BasisVector { name: format!("{cname}_{}", b.name), degree: cdeg + b.degree, weight: b.weight });
        }
    }
    let mut l = Dgla::new(vectors);
    let n = l.dim();
    for i in 0..coh.len() {
        for j in 0..coh.len() {
            let Some((t, c)) = product(i, j) else { continue };
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            for s in 0..gd {
                for u in 0..gd {
                    let br = g.bracket_basis(s, u);
                    let terms: Vec<(usize, Scalar)> = br
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                        .map(|(r, x)| (idx(t, r), x * &c * crate::scalar::sign(g.degree(s) * coh[j].1)))
                        .collect();
                    if !terms.is_empty() {
                        l.bracket.insert((idx(i, s), idx(j, u)), terms.into_iter().collect());
                    }
                }
            }
        }
    }
    let mut pm = Matrix::zeros(n, n);
    for i in 0..coh.len() {
        for j in 0..coh.len() {
            let c = integral(i, j);
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            for s in 0..gd {
                for u in 0..gd {
                    let sign = crate::scalar::sign(g.degree(s) * coh[j].1);
                    pm.set(idx(i, s), idx(j, u), &c * k.matrix.get(s, u) * sign);
                }
            }
        }
    }
    (l, CyclicPairing { matrix: pm, d: k.d + 2, weight: k.weight })
}

/// The (−1)-shifted critical locus of `f = x²y` on `Q[x, y]`, with
/// `ω = Σ dp dx + D(x dp_x dp_y dp_y)`. The correction lies in `F³`.
pub fn perturbed_cotangent(max_order: u32, max_form_order: u32) -> Result<(PolyContext, PreSymplectic)> {
    let b = FreeWCDGA::new(vec![poly_gen("x"), poly_gen("y")]);
    let f = b.gen("x").mul(&b.gen("x")).mul(&b.gen("y"));
    let (a, w) = derham::generate_twisted_cotangent(&b, &f, -1, 0)?;
    let a = a.with_truncation(Truncation::order(max_order));
    let form = |name: &str| Element::generator(&a.generator(name).expect("cotangent generator").differential());
    let px = derham::cotangent_name("x");
    let py = derham::cotangent_name("y");
    let beta = a.gen("x").mul(&form(&px)).mul(&form(&py)).mul(&form(&py));
    let exact = derham::dr_differential(&a, &beta)?;
    let total = &w.total() + &exact;
    let omega = PreSymplectic::from_total(-1, 0, &total, max_form_order);
    Ok((PolyContext::new(a, -1, 0, None), omega))
}

/// `Q[x]/(x²)` with `x` in degree zero.
pub fn dual_numbers_quotient() -> QuotientTarget {
    let a = FreeWCDGA::new(vec![poly_gen("x")]);
    let x = a.gen("x");
    QuotientTarget { relations: vec![x.mul(&x)], algebra: a }
}

/// Three degree-zero generators of weights −1, 1 and 2.
pub fn weighted_three() -> FreeWCDGA {
    FreeWCDGA::new(vec![
        Generator::with_kind(Kind::Base, "u", 0, -1),
        Generator::with_kind(Kind::Base, "v", 0, 1),
        Generator::with_kind(Kind::Base, "w", 0, 2),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_topology() {
        let s = SurfaceComplex::genus_two();
        let delta = s.coboundary();
        assert_eq!(delta.rank(), 5);
        assert_eq!(s.h1().len(), 4);
        let q = s.intersection();
        assert_eq!(q.transpose(), Matrix::from_rows((0..4).map(|i| (0..4).map(|j| -q.get(i, j).clone()).collect()).collect()));
        assert!(!num_traits::Zero::is_zero(&q.determinant()));
        // coboundaries integrate to zero
        for e in 0..9 {
            let mut col = vec![zero(); 9];
            col[e] = one();
            let image = delta.apply(&col);
            let total: Scalar = s.triangles.iter().zip(&image).map(|(t, v)| v * int(t.3)).sum();
            assert!(num_traits::Zero::is_zero(&total));
        }
    }

    #[test]
    fn instances_validate() {
        for (l, p) in [canonical_pair(), sl2(), abelian_identity(4)] {
            assert!(l.validate().is_valid());
            assert!(l.validate_pairing(&p).is_valid());
        }
        let (g, k) = sl2();
        let (l, p) = surface_dgla(&g, &k);
        assert_eq!(l.dim(), 18);
        assert!(l.validate().is_valid());
        assert!(l.validate_pairing(&p).is_valid());
        assert!(two_term_complex().validate().is_valid());
        assert!(square_bracket().validate().is_valid());
    }

    #[test]
    fn perturbed_cotangent_is_closed() {
        let (ctx, w) = perturbed_cotangent(6, 4).unwrap();
        assert!(!w.omega(3).is_zero());
        assert!(derham::check_presymplectic(&ctx.base, &w).unwrap().is_valid());
    }
}
