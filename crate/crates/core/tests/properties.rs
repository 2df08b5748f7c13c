use std::collections::BTreeMap;

use proptest::prelude::*;

use starpi::decision::{
    central_space_of_slice, consequences_in_slice, identity_space_of_slice, is_identity, ConsequenceStrategy, EvalMode,
    Slice,
};
use starpi::field::{Field, FieldElement};
use starpi::freealg::{MultiDegree, StarPolynomial, Variable, Word};
use starpi::ut2::{evaluate, matrix_from_coordinates, Assignment, InvolutionKind};

const LETTERS: [Variable; 4] = [Variable::y(1), Variable::y(2), Variable::z(1), Variable::z(2)];

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn arb_poly(field: Field, max_len: usize, max_terms: usize) -> impl Strategy<Value = StarPolynomial> {
    let p = field.characteristic() as i64;
    prop::collection::vec((prop::collection::vec(0..LETTERS.len(), 0..=max_len), 0..p), 0..=max_terms).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .map(|(w, c)| (Word::new(w.into_iter().map(|i| LETTERS[i]).collect()), FieldElement::from_i64(field, c)));
            let mut acc = StarPolynomial::zero(field);
            for (w, c) in terms {
                acc = acc + StarPolynomial::monomial(c, w);
            }
            acc
        },
    )
}

fn arb_kind() -> impl Strategy<Value = InvolutionKind> {
    prop_oneof![Just(InvolutionKind::Star), Just(InvolutionKind::S)]
}

fn arb_assignment(field: Field) -> impl Strategy<Value = (InvolutionKind, Vec<i64>)> {
    (arb_kind(), prop::collection::vec(0..field.characteristic() as i64, 8))
}

fn assignment(field: Field, kind: InvolutionKind, coords: &[i64]) -> Assignment<FieldElement> {
    let mut a = Assignment::new(kind, FieldElement::one(field));
    for (i, v) in LETTERS.iter().enumerate() {
        let c: Vec<FieldElement> = coords[2 * i..2 * i + 2].iter().map(|&x| FieldElement::from_i64(field, x)).collect();
        a.set(*v, matrix_from_coordinates(kind, *v, &c)).unwrap();
    }
    a
}

/// A symmetry-respecting substitution: `y` gets a symmetric image, `z` a skew one.
fn substitution(images: &[StarPolynomial]) -> BTreeMap<Variable, StarPolynomial> {
    LETTERS
        .iter()
        .zip(images)
        .map(|(v, g)| {
            let (plus, minus) = g.sym_skew_split();
            (*v, if v.is_skew() { minus } else { plus })
        })
        .collect()
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(f5(), 3, 4), b in arb_poly(f5(), 3, 4), c in arb_poly(f5(), 3, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &StarPolynomial::one(f5()), a.clone());
    }

    #[test]
    fn involution_is_an_anti_automorphism(a in arb_poly(f5(), 3, 4), b in arb_poly(f5(), 3, 4)) {
        prop_assert_eq!(a.involute().involute(), a.clone());
        prop_assert_eq!((&a * &b).involute(), &b.involute() * &a.involute());
        prop_assert_eq!((&a + &b).involute(), &a.involute() + &b.involute());
        let (plus, minus) = a.sym_skew_split();
        prop_assert!(plus.is_symmetric() && minus.is_skew());
        prop_assert_eq!(&plus + &minus, a);
    }

    #[test]
    fn substitution_commutes_with_involution(
        f in arb_poly(f5(), 3, 4),
        images in prop::collection::vec(arb_poly(f5(), 2, 3), 4),
    ) {
        let sigma = substitution(&images);
        prop_assert_eq!(f.substitute(&sigma).unwrap().involute(), f.involute().substitute(&sigma).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        a in arb_poly(f5(), 3, 4),
        b in arb_poly(f5(), 3, 4),
        (kind, coords) in arb_assignment(f5()),
    ) {
        let x = assignment(f5(), kind, &coords);
        let (ea, eb) = (evaluate(&a, &x).unwrap(), evaluate(&b, &x).unwrap());
        prop_assert_eq!(evaluate(&(&a * &b), &x).unwrap(), ea.mul(&eb));
        prop_assert_eq!(evaluate(&(&a + &b), &x).unwrap(), ea.add(&eb));
        prop_assert_eq!(evaluate(&a.involute(), &x).unwrap(), ea.involve(kind));
    }

    /// Below degree 3 in every variable, vanishing on all of F3 and vanishing
    /// generically agree.
    #[test]
    fn generic_and_exhaustive_agree(f in arb_poly(Field::prime(3).unwrap(), 2, 5), kind in arb_kind()) {
        let exhaustive = is_identity(&f, kind, EvalMode::FiniteExhaustive(Field::prime(3).unwrap())).unwrap().holds();
        let generic = is_identity(&f, kind, EvalMode::GenericCharP(3)).unwrap().holds();
        prop_assert_eq!(exhaustive, generic);
    }
}

fn small_slices() -> Vec<Slice> {
    Slice::all_up_to(3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn central_contains_identities(idx in 0..small_slices().len(), kind in arb_kind(), q in prop_oneof![Just(3u32), Just(5)]) {
        let sl = &small_slices()[idx];
        let mode = EvalMode::FiniteExhaustive(Field::prime(q).unwrap());
        let ids = identity_space_of_slice(sl, kind, mode).unwrap();
        let central = central_space_of_slice(sl, kind, mode).unwrap();
        prop_assert!(ids.is_subspace_of(&central).unwrap());
    }

    /// Consequences of identities are identities, and adding generators only
    /// enlarges the generated space.
    #[test]
    fn consequences_are_sound_and_monotone(
        picks in prop::collection::vec(0..4usize, 1..3),
        idx in 0..small_slices().len(),
    ) {
        let field = Field::prime(3).unwrap();
        let mode = EvalMode::FiniteExhaustive(field);
        let pool: Vec<StarPolynomial> = ["[y1,y2]", "[z1,z2]", "z1*y1*z2 - z2*y1*z1", "z1^3 - z1"]
            .iter()
            .map(|t| StarPolynomial::parse(t, field).unwrap())
            .collect();
        let gens: Vec<StarPolynomial> = picks.iter().map(|&i| pool[i].clone()).collect();
        let sl = &small_slices()[idx];
        let strategy = ConsequenceStrategy::default_for(mode, 3);
        let small = consequences_in_slice(&[], &gens[..1], sl, &strategy, mode, None).unwrap();
        let large = consequences_in_slice(&[], &gens, sl, &strategy, mode, None).unwrap();
        let ids = identity_space_of_slice(sl, InvolutionKind::Star, mode).unwrap();
        prop_assert!(small.span.is_subspace_of(&large.span).unwrap());
        prop_assert!(large.span.is_subspace_of(&ids).unwrap());
    }
}

#[test]
fn slice_of_mixed_degree() {
    let sl = Slice::new(MultiDegree::new(&[(1, 1)], &[(1, 2)]));
    assert_eq!(sl.dim(), 3);
}
