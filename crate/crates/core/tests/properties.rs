use proptest::prelude::*;

use rext::*;

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(0..q, rows * cols)
        .prop_map(move |data| Mat::new(PrimeField::new(q).unwrap(), rows, cols, data).unwrap())
}

fn any_matrix() -> impl Strategy<Value = Mat> {
    (prime(), 1..6usize, 1..6usize).prop_flat_map(|(q, r, c)| matrix(q, r, c))
}

fn square(max: usize) -> impl Strategy<Value = Mat> {
    (prime(), 1..=max).prop_flat_map(|(q, n)| matrix(q, n, n))
}

fn invertible(q: u32, n: usize) -> impl Strategy<Value = Mat> {
    matrix(q, n, n).prop_filter("singular", |m| m.rank() == m.rows())
}

fn rvector() -> impl Strategy<Value = RVector> {
    proptest::collection::vec(1..5usize, 1..5).prop_map(|v| RVector::new(v).unwrap())
}

/// `det(sI - A)` by cofactor expansion over polynomial entries.
fn cofactor_charpoly(a: &Mat) -> Poly {
    let f = a.field();
    let n = a.rows();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::new(f, vec![f.neg(a.get(i, j))]);
                    if i == j {
                        c.add(&Poly::s(f)).unwrap()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    fn det(m: &[Vec<Poly>], f: PrimeField) -> Poly {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = Poly::zero(f);
        for j in 0..m.len() {
            let minor: Vec<Vec<Poly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul(&det(&minor, f)).unwrap();
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
            .unwrap();
        }
        acc
    }
    det(&entries, f)
}

fn primitive_state(q: u32, m: usize, n: usize) -> impl Strategy<Value = MultiseqState> {
    let f = PrimeField::new(q).unwrap();
    let p = find_primitive(f, n).unwrap();
    matrix(q, m, n)
        .prop_filter("zero state", |s| !s.is_zero())
        .prop_map(move |s| MultiseqState::new(s, p.clone()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_transpose(m in any_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn charpoly_matches_cofactor_expansion(a in square(4)) {
        prop_assert_eq!(a.charpoly().unwrap(), cofactor_charpoly(&a));
    }

    #[test]
    fn charpoly_is_similarity_invariant(
        (a, p) in (prime(), 1..6usize).prop_flat_map(|(q, n)| (matrix(q, n, n), invertible(q, n)))
    ) {
        let conj = p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(conj.charpoly().unwrap(), a.charpoly().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(p in (prime(), 1..6usize).prop_flat_map(|(q, n)| invertible(q, n))) {
        let id = Mat::identity(p.field(), p.rows());
        let inv = p.inverse().unwrap();
        prop_assert_eq!(p.mul(&inv).unwrap(), id.clone());
        prop_assert_eq!(inv.mul(&p).unwrap(), id);
    }

    #[test]
    fn division_identity(
        (q, a, b) in prime().prop_flat_map(|q| (Just(q), proptest::collection::vec(0..q, 0..8), proptest::collection::vec(0..q, 1..6)))
    ) {
        let f = PrimeField::new(q).unwrap();
        let (a, b) = (Poly::new(f, a), Poly::new(f, b));
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quot.mul(&b).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn matrix_json_round_trip(m in any_matrix()) {
        let text = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<Mat>(&text).unwrap(), m);
    }

    #[test]
    fn column_span_is_shift_invariant(
        (s, k) in (prime(), 1..4usize, 2..6usize).prop_flat_map(|(q, m, n)| (primitive_state(q, m, n), -50..50i64))
    ) {
        let shifted = s.step(k);
        let joint = s.state().hstack(shifted.state()).unwrap();
        prop_assert_eq!(shifted.dimension(), s.dimension());
        prop_assert_eq!(joint.rank(), s.dimension());
        prop_assert_eq!(s.step(k).step(-k), s.clone());
    }

    #[test]
    fn canonical_form_is_orbit_invariant(
        (s, k) in (prime(), 1..3usize, 2..4usize).prop_flat_map(|(q, m, n)| (primitive_state(q, m, n), 0..400i64))
    ) {
        prop_assert_eq!(s.step(k).canonical().unwrap(), s.canonical().unwrap());
    }

    #[test]
    fn berlekamp_massey_recovers_minpoly(
        s in (prime(), 2..6usize).prop_flat_map(|(q, n)| primitive_state(q, 1, n))
    ) {
        let samples = s.component_samples(1, 2 * s.n());
        prop_assert_eq!(&minimal_poly_oracle(s.field(), &samples).unwrap(), s.minpoly());
    }

    #[test]
    fn road_round_trip(r in rvector()) {
        let path = road(&r);
        prop_assert_eq!(path.len(), r.sum() - r.len() + 1);
        prop_assert!(path.last().unwrap().is_ones());
        for w in path.windows(2) {
            prop_assert_eq!(&phi(&w[0]).unwrap(), &w[1]);
        }
        let trav = backward_traverse(&r);
        prop_assert_eq!(trav.len(), path.len() - 1);
        for (i, (g, c)) in trav.iter().enumerate() {
            prop_assert_eq!(g, &path[path.len() - 1 - i]);
            prop_assert_eq!(active_coordinate(g, &r).unwrap(), *c);
            let mut up = g.parts().to_vec();
            up[c - 1] += 1;
            prop_assert_eq!(&phi(&RVector::new(up).unwrap()).unwrap(), g);
        }
    }

    #[test]
    fn synthesis_reaches_maximum_dimension(
        (q, r, extra, seed) in (prime(), proptest::collection::vec(1..4usize, 1..4), 0..3usize, any::<u64>())
    ) {
        prop_assume!(q <= 3 || r.iter().sum::<usize>() + extra <= 5);
        let r = RVector::new(r).unwrap();
        let n = r.sum() + extra;
        let f = PrimeField::new(q).unwrap();
        let ladder = PolyLadder::default_for(f, 1, n).unwrap();
        let syn = synthesize(SynthesisConfig { r: &r, n, ladder: &ladder, choices: Choices::Seeded(seed), verify_steps: true }).unwrap();
        prop_assert_eq!(syn.state.extension_dimension(&r).unwrap(), r.sum());
        prop_assert_eq!(syn.state.minpoly(), ladder.get(n).unwrap());
        for step in &syn.steps {
            let mut next = step.point.parts().to_vec();
            next[step.active - 1] += 1;
            prop_assert_eq!(step.extension_dimension, Some(next.iter().sum::<usize>()));
        }
        let replay = synthesize(SynthesisConfig {
            r: &r, n, ladder: &ladder, choices: Choices::Script(syn.script.clone()), verify_steps: false,
        }).unwrap();
        prop_assert_eq!(replay.state, syn.state);
    }

    #[test]
    fn lfsr_round_trip(
        (q, m, b, seed) in (prime(), 1..4usize, 1..4usize, any::<u64>())
    ) {
        prop_assume!(u128::from(q).pow((m * b) as u32) <= 1 << 14);
        let f = PrimeField::new(q).unwrap();
        let n = m * b;
        let r = RVector::new(vec![b; m]).unwrap();
        let ladder = PolyLadder::default_for(f, 1, n).unwrap();
        let syn = synthesize(SynthesisConfig { r: &r, n, ladder: &ladder, choices: Choices::Seeded(seed), verify_steps: false }).unwrap();
        let a = transition_from_multiseq(&syn.state).unwrap();
        let spec = feedback_blocks(&a).unwrap();
        prop_assert_eq!(spec.transition(), a.clone());
        prop_assert_eq!(MCompanion::from_matrix(a.mat().clone(), m).unwrap(), a.clone());
        prop_assert!(verify_lfsr(&spec, syn.state.minpoly()).passed());
        let start = lfsr_state_of(&syn.state, b).unwrap();
        prop_assert_eq!(spec.words(&start, 3 * n).unwrap(), syn.state.words(3 * n));
    }
}

#[test]
fn one_lfsr_per_extended_multisequence() {
    // every (2,2)-extension orbit over F_2 with s^4+s+1 gives a distinct LFSR
    let f = PrimeField::new(2).unwrap();
    let p = Poly::parse(f, "s^4+s+1").unwrap();
    let r = RVector::new(vec![2, 2]).unwrap();
    let mut specs = std::collections::BTreeSet::new();
    for idx in 1u32..256 {
        let data = (0..8).map(|i| (idx >> i) & 1).collect();
        let s = MultiseqState::new(Mat::new(f, 2, 4, data).unwrap(), p.clone()).unwrap();
        if s.extension_dimension(&r).unwrap() != 4 {
            continue;
        }
        let spec = feedback_blocks(&transition_from_multiseq(&s).unwrap()).unwrap();
        specs.insert(serde_json::to_string(&spec).unwrap());
    }
    assert_eq!(specs.len() as u64, 8);
    assert_eq!(count_lfsr(2, 2, 2).unwrap(), 8u32.into());
}
