//! Module invariants beyond the acceptance battery: braiding duality,
//! derivation calculus, adjoint bounds, and twist compatibility.

use std::sync::Arc;

use proptest::prelude::*;

use hopf32_core::cyclotomic::Nq;
use hopf32_core::groups::catalogue;
use hopf32_core::nichols::{
    act_diagonal, adjoint, derivation, named_matrix, nichols_dimensions, shuffle_product,
    BraidingOp, ShuffleElement,
};
use hopf32_core::ydmod::{InducedRep, YdModule};
use hopf32_core::{BraidingMatrix, CycScalar, Mat};

fn transpose_inverse(bm: &BraidingMatrix) -> BraidingMatrix {
    let rows: Vec<Vec<CycScalar>> = (0..bm.dim)
        .map(|i| (0..bm.dim).map(|j| bm.entry(j, i).inv().unwrap()).collect())
        .collect();
    BraidingMatrix::from_rows(rows).unwrap()
}

#[test]
fn inverse_braiding_preserves_dimensions() {
    for name in ["b3_++", "b3_--", "b4_+", "b4_-"] {
        let bm = named_matrix(name).unwrap();
        let dual = transpose_inverse(&bm);
        let a = nichols_dimensions(&bm, 20, 33).unwrap();
        let b = nichols_dimensions(&dual, 20, 33).unwrap();
        assert_eq!(a.total, b.total, "{name}");
        assert_eq!(a.hilbert, b.hilbert, "{name}");
    }
}

#[test]
fn adjoint_vanishing_index_is_m12_plus_one() {
    for name in ["b2", "b3_++", "b3_--", "b4_+", "b6_1", "b1_-1"] {
        let bm = named_matrix(name).unwrap();
        let op = BraidingOp::from_diagonal(&bm);
        let n1 = match bm.entry(0, 0).nq() {
            Nq::Finite(n) => n,
            Nq::Infinite => continue,
        };
        // least m with b12 b21 b11^m = 1, if any
        let mut t = bm.entry(0, 1).clone();
        t.mul_assign_ref(bm.entry(1, 0));
        let mut m12 = None;
        for m in 0..n1 {
            if t.is_one() {
                m12 = Some(m);
                break;
            }
            t.mul_assign_ref(bm.entry(0, 0));
        }
        let x = ShuffleElement::letter(2, 0);
        let y = ShuffleElement::letter(2, 1);
        let mut w = y.clone();
        let mut n12 = None;
        for k in 1..=n1 {
            w = adjoint(&x, &w, &op);
            if w.is_zero() {
                n12 = Some(k);
                break;
            }
        }
        let n12 = n12.expect("(Ad_x)^(N1)(y) vanishes");
        assert!(n12 <= n1, "{name}");
        if let Some(m) = m12 {
            assert_eq!(n12, m + 1, "{name}");
        }
    }
}

#[test]
fn braid_equation_on_triple_tensors_of_induced_modules() {
    // dense-matrix route on V (x) V (x) V
    let d4 = Arc::new(catalogue("D4").unwrap());
    let h = Arc::new(catalogue("H").unwrap());
    let mut mods = Vec::new();
    {
        let s = d4.element_by_name("s").unwrap();
        let cent = d4.centralizer(s);
        for chi in cent.group.linear_characters() {
            if !chi.value(cent.index_of(s).unwrap()).is_one() {
                mods.push(YdModule::build_induced(&d4, s, &InducedRep::Char(chi.clone())).unwrap());
            }
        }
        let me = h.element_by_name("-e").unwrap();
        mods.push(YdModule::build_induced(&h, me, &InducedRep::Irrep2).unwrap());
    }
    for v in &mods {
        let d = v.dim;
        let c = v.braiding();
        let id = Mat::identity(d);
        let c1 = kron(&c, &id); // c (x) 1 on V3
        let c2 = kron(&id, &c); // 1 (x) c
        let lhs = c1.mul(&c2).mul(&c1);
        let rhs = c2.mul(&c1).mul(&c2);
        assert_eq!(lhs, rhs);
    }
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zero(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let v = a.at(i, j);
            if v.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let w = b.at(k, l);
                    if w.is_zero() {
                        continue;
                    }
                    let mut t = v.clone();
                    t.mul_assign_ref(w);
                    *out.at_mut(i * b.rows + k, j * b.cols + l) = t;
                }
            }
        }
    }
    out
}

#[test]
fn twists_preserve_diagonal_type_and_correspond_on_summand_data() {
    let g = Arc::new(catalogue("C2xC4").unwrap());
    let mut modules = Vec::new();
    for hidx in 1..g.order {
        let cent = g.centralizer(hidx);
        for chi in cent.group.linear_characters() {
            if chi.value(cent.index_of(hidx).unwrap()).is_one() {
                continue;
            }
            modules
                .push(YdModule::build_induced(&g, hidx, &InducedRep::Char(chi.clone())).unwrap());
        }
    }
    for f in g.automorphisms() {
        for m in modules.iter().take(12) {
            let t = m.twist(f);
            assert_eq!(m.diagonal_matrix().is_some(), t.diagonal_matrix().is_some());
            // the graded character data corresponds under f
            let (h, rep) = &m.summands[0];
            assert_eq!(t.summands[0].0, f.apply(*h));
            if let (InducedRep::Char(chi), InducedRep::Char(chi2)) = (rep, &t.summands[0].1) {
                let finv = f.inverse();
                let cent_old = g.centralizer(*h);
                let cent_new = g.centralizer(f.apply(*h));
                for (k, &e) in cent_new.elements.iter().enumerate() {
                    let pre = finv.apply(e);
                    let idx = cent_old.index_of(pre).unwrap();
                    assert_eq!(chi2.exponent(k), chi.exponent(idx));
                }
            }
        }
    }
}

fn arb_element(degree: usize) -> impl Strategy<Value = ShuffleElement> {
    proptest::collection::vec((0usize..2, -2i64..=2), degree.max(1)).prop_map(move |letters| {
        let mut z = ShuffleElement::zero(2, degree);
        // a handful of random words with small coefficients
        let mut word = Vec::new();
        for (l, _) in &letters {
            word.push(*l);
        }
        let mut t = ShuffleElement::from_word(2, &word);
        t.scale(&CycScalar::from_int(letters[0].1));
        z.add_assign(&t);
        let flipped: Vec<usize> = word.iter().map(|&l| 1 - l).collect();
        let mut t = ShuffleElement::from_word(2, &flipped);
        t.scale(&CycScalar::from_int(letters[letters.len() - 1].1));
        z.add_assign(&t);
        z
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn leibniz_rule_for_skew_derivations(
        z1 in arb_element(2),
        z2 in arb_element(3),
    ) {
        for name in ["b2", "b6_1"] {
            let bm = named_matrix(name).unwrap();
            let op = BraidingOp::from_diagonal(&bm);
            let prod = shuffle_product(&z1, &z2, &op);
            for i in 0..2 {
                let lhs = derivation(&prod, i);
                // d_i(z1 z2) = d_i(z1) (g_i . z2) + z1 d_i(z2)
                let mut rhs = shuffle_product(&derivation(&z1, i), &act_diagonal(&bm, i, &z2), &op);
                rhs.add_assign(&shuffle_product(&z1, &derivation(&z2, i), &op));
                prop_assert_eq!(&lhs, &rhs);
            }
        }
    }

    #[test]
    fn shuffle_products_associate(
        z1 in arb_element(1),
        z2 in arb_element(2),
        z3 in arb_element(2),
    ) {
        let bm = named_matrix("b3_+-").unwrap();
        let op = BraidingOp::from_diagonal(&bm);
        let a = shuffle_product(&shuffle_product(&z1, &z2, &op), &z3, &op);
        let b = shuffle_product(&z1, &shuffle_product(&z2, &z3, &op), &op);
        prop_assert_eq!(a, b);
    }
}
