mod common;

use std::collections::BTreeSet;

use cobound::functional::{is_linear_on, SSet};
use cobound::subspace::linear_extension;
use cobound::{Functional, FunctionTable, Params, Point, Subspace, SumsetMode};
use proptest::prelude::*;

use common::*;

fn space() -> impl Strategy<Value = Params> {
    prop_oneof![
        (1usize..=8).prop_map(|n| Params::new(2, n, 1).unwrap()),
        (1usize..=5).prop_map(|n| Params::new(3, n, 1).unwrap()),
        (1usize..=4).prop_map(|n| Params::new(5, n, 1).unwrap()),
    ]
}

fn points(params: Params, count: usize) -> impl Strategy<Value = Vec<Point>> {
    proptest::collection::vec(0..params.size(), 0..=count)
        .prop_map(move |ix| ix.into_iter().map(|i| params.point_at(i).unwrap()).collect())
}

proptest! {
    #[test]
    fn point_addition_is_an_abelian_group(params in space(), seeds in any::<[u64; 3]>()) {
        let q = params.size() as u64;
        let [a, b, c] = seeds.map(|s| params.point_at((s % q) as usize).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&params.zero()).unwrap(), a.clone());
        prop_assert!(a.add(&a.scale(params.p - 1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn dimension_formula(params in space(), seed in any::<u64>()) {
        let q = params.size() as u64;
        let mut s = seed;
        let mut draw = |k: usize| -> Vec<Point> {
            (0..k).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                params.point_at(((s >> 11) % q) as usize).unwrap()
            }).collect()
        };
        let ka = (seed % (params.n as u64 + 1)) as usize;
        let kb = ((seed >> 8) % (params.n as u64 + 1)) as usize;
        let a = Subspace::span(params.p, params.n, &draw(ka)).unwrap();
        let b = Subspace::span(params.p, params.n, &draw(kb)).unwrap();
        let sum = a.sum(&b).unwrap();
        let cap = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
        prop_assert!(cap.is_subspace_of(&a) && cap.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&sum) && b.is_subspace_of(&sum));
    }

    #[test]
    fn span_is_canonical(params in space(), gens in (0usize..6).prop_flat_map(|k| (Just(k), any::<u64>())), lambda in 1u32..5) {
        let (k, seed) = gens;
        let q = params.size() as u64;
        let pts: Vec<Point> = (0..k as u64)
            .map(|i| params.point_at(((seed.rotate_left(i as u32 * 7) ^ i) % q) as usize).unwrap())
            .collect();
        let lambda = lambda % params.p;
        let lambda = if lambda == 0 { 1 } else { lambda };
        let mut shuffled: Vec<Point> = pts.iter().rev().map(|v| v.scale(lambda).unwrap()).collect();
        shuffled.rotate_left(if k > 0 { seed as usize % k } else { 0 });
        let a = Subspace::span(params.p, params.n, &pts).unwrap();
        let b = Subspace::span(params.p, params.n, &shuffled).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(element_set(&a), closure(&params, &pts));
    }

    #[test]
    fn linear_extension_is_linear(gens in (points(Params::new(3, 3, 1).unwrap(), 3), points(Params::new(3, 3, 1).unwrap(), 2))) {
        let prm = Params::new(3, 3, 1).unwrap();
        let (vg, zg) = gens;
        let v = Subspace::span(3, 3, &vg).unwrap();
        let members = v.elements().unwrap();
        // Z spanned by combinations of V's members
        let zpts: Vec<Point> = zg.iter().map(|g| members[g.index() % members.len()].clone()).collect();
        let z = Subspace::span(3, 3, &zpts).unwrap();
        for target in &members {
            match linear_extension(&v, &z, target) {
                Ok(form) => {
                    prop_assert!(!z.contains(target));
                    prop_assert_eq!(form.eval(target), Some(1));
                    for w in z.elements().unwrap() {
                        prop_assert_eq!(form.eval(&w), Some(0));
                    }
                    let mut f = FunctionTable::zero(&prm);
                    let table = form.table().unwrap();
                    for (m, val) in members.iter().zip(&table) {
                        f = with_value(&prm, &f, m.index(), *val);
                    }
                    prop_assert!(pairwise_linear(&prm, &f, &element_set(&v)));
                }
                Err(cobound::Error::NoExtension) => prop_assert!(z.contains(target)),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn functional_bilinearity(seed in any::<u64>(), lambda in 0u32..5) {
        let prm = Params::new(5, 2, 1).unwrap();
        let f = FunctionTable::random(&prm, seed);
        let g = Functional::from_terms(5, (0..25).map(|i| (i, ((seed >> (i % 60)) % 5) as u32)));
        let h = Functional::from_terms(5, (0..25).map(|i| (i, ((seed.rotate_left(17) >> (i % 60)) % 5) as u32)));
        let lhs = g.combine(&h, lambda).apply(&f);
        let rhs = (g.apply(&f) + lambda * h.apply(&f)) % 5;
        prop_assert_eq!(lhs, rhs);
    }
}

fn with_value(params: &Params, f: &FunctionTable, index: usize, value: u32) -> FunctionTable {
    let mut v = f.values().to_vec();
    v[index] = value;
    FunctionTable::from_values(params, v).unwrap()
}

#[test]
fn intersection_matches_element_sets_exhaustively_small() {
    // every pair of subspaces spanned by up to two points of F_2^3 and F_3^2
    for prm in [Params::new(2, 3, 1).unwrap(), Params::new(3, 2, 1).unwrap()] {
        let q = prm.size();
        let mut spaces = BTreeSet::new();
        for a in 0..q {
            for b in 0..q {
                let gens = [prm.point_at(a).unwrap(), prm.point_at(b).unwrap()];
                spaces.insert(Subspace::span(prm.p, prm.n, &gens).unwrap().basis().to_vec());
            }
        }
        let spaces: Vec<Subspace> = spaces
            .into_iter()
            .map(|rows| Subspace::from_basis_rows(prm.p, prm.n, rows).unwrap())
            .collect();
        for a in &spaces {
            for b in &spaces {
                let cap = a.intersect(b).unwrap();
                let brute: BTreeSet<usize> = element_set(a).intersection(&element_set(b)).copied().collect();
                assert_eq!(element_set(&cap), brute);
                for v in prm.points() {
                    assert_eq!(cap.contains(&v), a.contains(&v) && b.contains(&v));
                }
            }
        }
    }
}

#[test]
fn membership_example() {
    let prm = Params::new(2, 3, 1).unwrap();
    let s = Subspace::span(2, 3, &[prm.point(&[1, 1, 0]).unwrap(), prm.point(&[0, 1, 1]).unwrap()]).unwrap();
    assert!(!s.contains(&prm.point(&[1, 1, 1]).unwrap()));
    assert!(!closure(&prm, &s.basis_points()).contains(&7));
}

#[test]
fn linearity_check_matches_pairwise_oracle() {
    let prm = Params::new(3, 3, 1).unwrap();
    for seed in 0..200u64 {
        let f = if seed % 4 == 0 {
            FunctionTable::zero(&prm)
        } else {
            FunctionTable::random(&prm, seed)
        };
        let gens: Vec<Point> = (0..(seed % 3) as usize)
            .map(|i| prm.point_at(((seed as usize) * 7 + i * 13) % 27).unwrap())
            .collect();
        let v = Subspace::span(3, 3, &gens).unwrap();
        assert_eq!(is_linear_on(&f, &v).unwrap(), pairwise_linear(&prm, &f, &element_set(&v)));
    }
    // an f that is linear on a line but not everywhere
    let p2 = Params::new(2, 2, 1).unwrap();
    let ind = FunctionTable::indicator(&p2, 3);
    assert!(!pairwise_linear(&p2, &ind, &(0..4).collect()));
    assert!(!is_linear_on(&ind, &Subspace::full(2, 2)).unwrap());
}

#[test]
fn s_fixtures() {
    // F_2^2: e_0 and e_1 + e_2 + e_3 (the three nonzero points sum to zero)
    let p2 = Params::new(2, 2, 1).unwrap();
    let s = SSet::build(&p2).unwrap();
    let got: BTreeSet<Dense> = s.elements().iter().map(|g| dense_of(&p2, g)).collect();
    let brute: BTreeSet<Dense> = all_coboundaries(&p2).into_iter().collect();
    assert_eq!(got, brute);
    assert_eq!(s.len(), 2);
    assert!(s.contains(&Functional::from_terms(2, [(1, 1), (2, 1), (3, 1)])));

    // F_2^3: e_0 and one element per 2-dimensional subspace (7 of them)
    let p3 = Params::new(2, 3, 1).unwrap();
    assert_eq!(SSet::build(&p3).unwrap().len(), 8);
}

#[test]
fn sumset_decomposition_matches_naive_enumeration() {
    for n in 1..=2 {
        for t in 0..=2 {
            let prm = Params::new(2, n, t).unwrap();
            let s = SSet::build(&prm).unwrap();
            let exact = naive_t_fold(&prm, t);
            let upto = naive_upto(&prm, t);
            for code in 0..(1usize << prm.size()) {
                let dense: Dense = (0..prm.size()).map(|i| ((code >> i) & 1) as u32).collect();
                let g = sparse_from_dense(2, &dense);
                for (mode, oracle) in [(SumsetMode::Exact, &exact), (SumsetMode::Upto, &upto)] {
                    let got = s.decompose(&g, t, mode);
                    assert_eq!(got.is_some(), oracle.contains(&dense), "n={n} t={t} {mode} g={g:?}");
                    if let Some(d) = got {
                        assert_eq!(d.sum(2).unwrap(), g);
                    }
                }
            }
        }
    }
}
