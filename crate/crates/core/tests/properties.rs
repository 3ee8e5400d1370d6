use hitkit::grouprep::enumerate_gl;
use hitkit::linalg::{Row, Subspace};
use hitkit::poly::{Monomial, Polynomial};
use hitkit::steenrod2::{adem_normalize, SteenrodElem2};
use hitkit::steenrod_action::{hit_space, is_hit, steenrod_p};
use hitkit::{Field, FieldElem};
use proptest::prelude::*;

fn f(q: u32) -> Field {
    Field::builtin(q).unwrap()
}

fn rows(field: &Field, raw: &[Vec<u8>]) -> Vec<Row> {
    let q = field.q() as u8;
    let els = field.elements();
    raw.iter().map(|r| r.iter().map(|&x| els[(x % q) as usize]).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subspace_dimension_formula(
        q in prop::sample::select(vec![2u32, 3, 4]),
        a in prop::collection::vec(prop::collection::vec(0u8..9, 6), 0..5),
        b in prop::collection::vec(prop::collection::vec(0u8..9, 6), 0..5),
    ) {
        let fq = f(q);
        let u = Subspace::span(&fq, 6, &rows(&fq, &a)).unwrap();
        let w = Subspace::span(&fq, 6, &rows(&fq, &b)).unwrap();
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn adem_product_is_associative(
        a in prop::collection::vec(0u32..7, 1..3),
        b in prop::collection::vec(0u32..7, 1..3),
        c in prop::collection::vec(0u32..7, 1..3),
    ) {
        let (x, y, z) = (adem_normalize(&a), adem_normalize(&b), adem_normalize(&c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let word: Vec<u32> = a.iter().chain(&b).chain(&c).copied().collect();
        prop_assert_eq!(adem_normalize(&word), x.mul(&y).mul(&z));
    }

    #[test]
    fn steenrod_commutes_with_linear_substitution(
        q in prop::sample::select(vec![2u32, 3]),
        exps in prop::collection::vec(0u32..4, 2),
        k in 0u32..4,
        pick in 0usize..48,
    ) {
        let fq = f(q);
        let group = enumerate_gl(2, &fq).unwrap();
        let g = &group[pick % group.len()];
        let p = Polynomial::monomial(&fq, Monomial::new(&exps));
        prop_assert_eq!(
            steenrod_p(k, &p.substitute(g).unwrap()),
            steenrod_p(k, &p).substitute(g).unwrap()
        );
    }

    #[test]
    fn hit_space_is_stable_under_gl(
        q in prop::sample::select(vec![2u32, 3]),
        d in 1u32..7,
        pick in 0usize..48,
    ) {
        let fq = f(q);
        let group = enumerate_gl(2, &fq).unwrap();
        let g = &group[pick % group.len()];
        let hit = hit_space(2, d, &fq).unwrap();
        for row in hit.subspace.basis().iter().take(4) {
            let p = Polynomial::from_vector(&fq, 2, d, row).unwrap();
            prop_assert!(is_hit(&p.substitute(g).unwrap()).unwrap());
        }
    }

    #[test]
    fn normal_forms_act_like_words(word in prop::collection::vec(0u32..6, 1..4), e in prop::collection::vec(0u32..5, 3)) {
        let f2 = f(2);
        let p = Polynomial::monomial(&f2, Monomial::new(&e));
        let mut direct = p.clone();
        for &i in word.iter().rev() {
            direct = steenrod_p(i, &direct);
        }
        let normal: SteenrodElem2 = adem_normalize(&word);
        prop_assert_eq!(normal.apply(&p), direct);
    }
}

#[test]
fn zero_vector_spans_nothing() {
    let f2 = f(2);
    let z: Row = vec![FieldElem::ZERO; 4];
    assert_eq!(Subspace::span(&f2, 4, &[z]).unwrap().dim(), 0);
}
