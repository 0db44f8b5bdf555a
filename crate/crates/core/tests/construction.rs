mod common;

use cobound::construction::certificate::map_from_doc;
use cobound::construction::{
    build_family, build_witness, check_family, check_witness, counting_chain_check,
    find_violating_pair, property3_check, refute, refute_exhaustive, refute_family, sweep,
    u_diagnostic, validate, validate_certificate, ExhaustiveVerdict, FamilyOutcome, FamilySource,
    Implication, LinearMap, PairStrategy, RandomFamily, SweepCell, VFamily, Variant, VariantTag,
};
use cobound::{Functional, FunctionTable, Params, SSet, Subspace, SumsetMode};

use common::*;

fn valid_maps(params: &Params, mode: SumsetMode) -> Vec<LinearMap> {
    let allowed = match mode {
        SumsetMode::Exact => naive_t_fold(params, params.t),
        SumsetMode::Upto => naive_upto(params, params.t),
    };
    enumerate_maps(params, &allowed)
        .into_iter()
        .filter(|(_, ok)| *ok)
        .map(|(images, _)| {
            let sparse = images.iter().map(|d| sparse_from_dense(params.p, d)).collect();
            LinearMap::new(params, sparse).unwrap()
        })
        .collect()
}

#[test]
fn oracle_valid_map_counts() {
    // counted by hand from S = {e_0} (n = 1) and S = {e_0, e_1+e_2+e_3} (n = 2)
    let expected = [
        (1, 0, SumsetMode::Exact, 0),
        (1, 0, SumsetMode::Upto, 0),
        (1, 1, SumsetMode::Exact, 1),
        (1, 1, SumsetMode::Upto, 2),
        (2, 0, SumsetMode::Exact, 0),
        (2, 0, SumsetMode::Upto, 0),
        (2, 1, SumsetMode::Exact, 4),
        (2, 1, SumsetMode::Upto, 7),
    ];
    for (n, t, mode, count) in expected {
        let prm = Params::new(2, n, t).unwrap();
        assert_eq!(valid_maps(&prm, mode).len(), count, "n={n} t={t} {mode}");
        let verdict = refute_exhaustive(&prm, mode).unwrap();
        assert_eq!(matches!(verdict, ExhaustiveVerdict::ExistsValidMap(_)), count > 0);
    }
}

#[test]
fn exhaustive_result_is_one_of_the_oracle_maps() {
    for (n, t) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let prm = Params::new(2, n, t).unwrap();
        for mode in [SumsetMode::Exact, SumsetMode::Upto] {
            let verdict = refute_exhaustive(&prm, mode).unwrap();
            if n <= 2 {
                let oracle = valid_maps(&prm, mode);
                match &verdict {
                    ExhaustiveVerdict::ExistsValidMap(m) => assert!(oracle.contains(m)),
                    ExhaustiveVerdict::NoValidMap => assert!(oracle.is_empty(), "n={n} t={t} {mode}"),
                }
            }
            let ExhaustiveVerdict::ExistsValidMap(map) = verdict else { continue };
            let s = SSet::build(&prm).unwrap();
            let FamilyOutcome::Family(fam) = build_family(&map, t, &s, mode).unwrap() else {
                panic!("returned map leaves a point uncovered");
            };
            assert_eq!(check_family(&fam), Ok(()));
            // at these sizes a valid map's family has no violating pair
            assert!(find_violating_pair(&fam, PairStrategy::Exhaustive).found.is_none());
        }
    }
}

#[test]
fn p2_n1_t1_valid_map_matches_hand_derivation() {
    let prm = Params::new(2, 1, 1).unwrap();
    let maps = valid_maps(&prm, SumsetMode::Exact);
    assert_eq!(maps[0].images()[0], Functional::from_terms(2, [(0, 1), (1, 1)]));
}

#[test]
fn property3_holds_on_families_from_valid_maps() {
    let mut trials = 0;
    for (n, t, mode) in [(2, 1, SumsetMode::Exact), (2, 1, SumsetMode::Upto), (3, 1, SumsetMode::Exact), (2, 2, SumsetMode::Exact)] {
        let prm = Params::new(2, n, t).unwrap();
        let s = SSet::build(&prm).unwrap();
        for map in valid_maps_small(&prm, mode) {
            let FamilyOutcome::Family(fam) = build_family(&map, t, &s, mode).unwrap() else {
                panic!("oracle-valid map was not covered");
            };
            for seed in 0..200u64 {
                let f = FunctionTable::random(&prm, seed);
                for x in 0..prm.size() {
                    assert!(property3_check(&fam, &map, x, &f).unwrap());
                    trials += 1;
                }
            }
        }
    }
    assert!(trials >= 10_000, "only {trials} trials");
}

fn valid_maps_small(params: &Params, mode: SumsetMode) -> Vec<LinearMap> {
    if params.n <= 2 {
        valid_maps(params, mode)
    } else {
        match refute_exhaustive(params, mode).unwrap() {
            ExhaustiveVerdict::ExistsValidMap(m) => vec![m],
            ExhaustiveVerdict::NoValidMap => vec![],
        }
    }
}

#[test]
fn witness_example_lines_p2_n2() {
    let prm = Params::new(2, 2, 1).unwrap();
    let fam = VFamily::lines(&prm);
    let f = build_witness(1, 2, &fam).unwrap();
    assert_eq!(f.values(), &[0, 0, 0, 1]);
    assert_eq!(check_witness(&f, 1, 2, &fam).unwrap(), Ok(()));
    let members = element_set(&Subspace::span(2, 2, &[prm.point_at(3).unwrap()]).unwrap());
    assert!(pairwise_linear(&prm, &f, &members));
}

#[test]
fn witness_on_random_families_passes_pairwise_oracle() {
    for seed in 0..60u64 {
        let prm = Params::new(if seed % 2 == 0 { 2 } else { 3 }, 3 + (seed % 3) as usize, 1).unwrap();
        let fam = RandomFamily::new(&prm, seed).materialize();
        let res = find_violating_pair(&fam, PairStrategy::Randomized { seed, budget: 10_000 });
        let Some(v) = res.found else { continue };
        let f = build_witness(v.x, v.y, &fam).unwrap();
        let z = prm.point_at(v.x).unwrap().add(&prm.point_at(v.y).unwrap()).unwrap().index();
        assert_eq!((f.at(v.x), f.at(v.y), f.at(z)), (0, 0, 1));
        for w in [v.x, v.y, z] {
            assert!(pairwise_linear(&prm, &f, &element_set(&fam.subspaces()[w])));
        }
    }
}

#[test]
fn uncovered_certificates_survive_reserialization() {
    let prm = Params::new(2, 2, 1).unwrap();
    let s = SSet::build(&prm).unwrap();
    let map = LinearMap::random(&prm, 7);
    let cert = refute(&map, 1, &s, SumsetMode::Exact, PairStrategy::Exhaustive).unwrap();
    assert_eq!(cert.tag(), VariantTag::Uncovered);
    let doc = cobound::construction::CertificateDoc::from_json(&cert.to_json()).unwrap();
    assert_eq!(validate(&doc), Ok(()));
    let again = map_from_doc(&prm, doc.map.as_ref().unwrap()).unwrap();
    assert_eq!(again, map);

    // pointing at a covered point makes the re-check fail
    let Variant::Uncovered { x } = cert.variant else { unreachable!() };
    let covered = (0..prm.size()).find(|&y| s.decompose(&map.defect(&prm.point_at(y).unwrap()), 1, SumsetMode::Exact).is_some());
    if let Some(y) = covered {
        assert_ne!(x, y);
        let mut bad = doc.clone();
        bad.x = Some(y);
        assert_eq!(validate(&bad).unwrap_err().name(), "uncovered_recheck");
    }
}

#[test]
fn witness_certificate_with_a_consistent_map_cannot_validate() {
    // graft a family witness onto a valid map: decompositions then fail to
    // re-sum, because a validating one would be a contradiction
    let prm = Params::new(2, 3, 1).unwrap();
    let ExhaustiveVerdict::ExistsValidMap(map) = refute_exhaustive(&prm, SumsetMode::Exact).unwrap() else {
        panic!("F_2^3 with t = 1 has a valid map");
    };
    let fam = VFamily::lines(&prm);
    let lines_with_generators = VFamily::from_generators(
        &prm,
        (0..prm.size())
            .map(|x| {
                let pt = prm.point_at(x).unwrap();
                cobound::DecompositionPairs::new(vec![(pt.clone(), prm.zero())])
            })
            .collect(),
    )
    .unwrap();
    assert_eq!(lines_with_generators.subspaces(), fam.subspaces());
    let cert = refute_family(&lines_with_generators, SumsetMode::Exact, PairStrategy::Exhaustive).unwrap();
    assert_eq!(validate_certificate(&cert), Ok(()));
    let mut doc = cert.to_doc();
    doc.map = Some(cobound::construction::certificate::map_to_doc(&map));
    assert!(validate(&doc).is_err());
}

#[test]
fn counting_chain_on_valid_map_families() {
    for (n, t) in [(2, 1), (3, 1), (2, 2)] {
        let prm = Params::new(2, n, t).unwrap();
        let s = SSet::build(&prm).unwrap();
        for map in valid_maps_small(&prm, SumsetMode::Exact) {
            let FamilyOutcome::Family(fam) = build_family(&map, t, &s, SumsetMode::Exact).unwrap() else {
                unreachable!()
            };
            let report = counting_chain_check(&fam).unwrap();
            assert_eq!(report.implication, Implication::Holds);
            assert!(report.consistent());
        }
    }
}

#[test]
fn u_diagnostic_bounds_on_random_families() {
    for seed in 0..40u64 {
        let prm = Params::new(2, 4 + (seed % 5) as usize, 1 + (seed % 2) as usize).unwrap();
        let d = u_diagnostic(&RandomFamily::new(&prm, seed)).unwrap();
        assert!(d.pair_count_ok() && d.u_bound_ok() && d.u_ratio_ok());
    }
}

#[test]
fn sweep_single_cell_matches_direct_search() {
    let prm = Params::new(2, 2, 1).unwrap();
    let cell = SweepCell {
        p: 2,
        n: 2,
        t: 1,
        source: FamilySource::Random,
        seed: 5,
        budget: 0,
    };
    let row = &sweep(&[cell])[0];
    let direct = find_violating_pair(&RandomFamily::new(&prm, 5), PairStrategy::Exhaustive);
    assert_eq!(row.pair_found, Some(direct.found.is_some()));
    assert_eq!(row.probes, Some(direct.probes));
    assert_eq!(row.x_index, direct.found.as_ref().map(|v| v.x));
}

#[test]
fn sweep_from_map_without_valid_map_records_error() {
    let row = &sweep(&[SweepCell {
        p: 2,
        n: 2,
        t: 0,
        source: FamilySource::FromMap,
        seed: 0,
        budget: 0,
    }])[0];
    assert!(row.error.as_deref().unwrap().contains("no valid map"));
}
