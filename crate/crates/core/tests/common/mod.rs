//! Brute-force oracles. None of these go through the search, reduction or
//! extension code they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cobound::{FunctionTable, Params, Point, Subspace};

/// A functional as a dense coefficient vector over all `p^n` points.
pub type Dense = Vec<u32>;

pub fn dense_evaluation(params: &Params, v: usize) -> Dense {
    let mut d = vec![0; params.size()];
    d[v] = 1;
    d
}

pub fn dense_add(p: u32, a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn dense_sub(p: u32, a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

pub fn dense_coboundary(params: &Params, a: usize, b: usize) -> Dense {
    let (pa, pb) = (params.point_at(a).unwrap(), params.point_at(b).unwrap());
    let s = pa.add(&pb).unwrap().index();
    let p = params.p;
    let mut d = vec![0; params.size()];
    d[s] = (d[s] + 1) % p;
    d[a] = (d[a] + p - 1) % p;
    d[b] = (d[b] + p - 1) % p;
    d
}

pub fn dense_of(params: &Params, g: &cobound::Functional) -> Dense {
    let mut d = vec![0; params.size()];
    for &(i, c) in g.terms() {
        d[i as usize] = c;
    }
    d
}

/// Every coboundary over all ordered pairs, without deduplication.
pub fn all_coboundaries(params: &Params) -> Vec<Dense> {
    let q = params.size();
    (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| dense_coboundary(params, a, b))
        .collect()
}

/// `{s_1 + … + s_t}` over ordered `t`-tuples of coboundaries.
pub fn naive_t_fold(params: &Params, t: usize) -> BTreeSet<Dense> {
    let cob = all_coboundaries(params);
    let mut level: BTreeSet<Dense> = [vec![0; params.size()]].into();
    for _ in 0..t {
        let mut next = BTreeSet::new();
        for g in &level {
            for s in &cob {
                next.insert(dense_add(params.p, g, s));
            }
        }
        level = next;
    }
    level
}

pub fn naive_upto(params: &Params, t: usize) -> BTreeSet<Dense> {
    (0..=t).flat_map(|s| naive_t_fold(params, s)).collect()
}

/// All points of a subspace by brute force: every point of `F_p^n` that is a
/// combination of the generators, found by closing under addition and scaling.
pub fn closure(params: &Params, gens: &[Point]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [0].into();
    loop {
        let before = set.len();
        let current: Vec<usize> = set.iter().copied().collect();
        for &v in &current {
            let pv = params.point_at(v).unwrap();
            for g in gens {
                set.insert(pv.add(g).unwrap().index());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

pub fn element_set(space: &Subspace) -> BTreeSet<usize> {
    space.elements().unwrap().iter().map(|v| v.index()).collect()
}

/// `f(u+w) = f(u) + f(w)` for every pair of members.
pub fn pairwise_linear(params: &Params, f: &FunctionTable, members: &BTreeSet<usize>) -> bool {
    let p = params.p;
    members.iter().all(|&u| {
        members.iter().all(|&w| {
            let s = params
                .point_at(u)
                .unwrap()
                .add(&params.point_at(w).unwrap())
                .unwrap()
                .index();
            f.at(s) == (f.at(u) + f.at(w)) % p
        })
    })
}

/// All linear maps by brute force over dense basis images, keyed by the
/// images, with a validity flag: every defect lies in `allowed`.
pub fn enumerate_maps(params: &Params, allowed: &BTreeSet<Dense>) -> BTreeMap<Vec<Dense>, bool> {
    let q = params.size();
    let p = params.p;
    let per_image = (p as usize).pow(q as u32);
    let dense_at = |mut k: usize| -> Dense {
        (0..q)
            .map(|_| {
                let c = (k % p as usize) as u32;
                k /= p as usize;
                c
            })
            .collect()
    };
    let total = per_image.pow(params.n as u32);
    let mut out = BTreeMap::new();
    for code in 0..total {
        let mut rest = code;
        let images: Vec<Dense> = (0..params.n)
            .map(|_| {
                let d = dense_at(rest % per_image);
                rest /= per_image;
                d
            })
            .collect();
        let valid = (0..q).all(|x| {
            let pt = params.point_at(x).unwrap();
            let mut value = vec![0; q];
            for (c, img) in pt.coords().iter().zip(&images) {
                for (slot, &v) in value.iter_mut().zip(img) {
                    *slot = (*slot + c * v) % p;
                }
            }
            allowed.contains(&dense_sub(p, &dense_evaluation(params, x), &value))
        });
        out.insert(images, valid);
    }
    out
}

pub fn sparse_from_dense(p: u32, d: &Dense) -> cobound::Functional {
    cobound::Functional::from_terms(
        p,
        d.iter().enumerate().map(|(i, &c)| (i as u32, c)),
    )
}
