mod common;

use std::sync::Arc;

use common::{all_homs, closure, is_normal_mask, isomorphic, mask, members, named, normal_subgroups, relabel};
use ogroup_core::{
    are_isomorphic, certificate, direct_product, generated_subgroup, greedy_refine, join_normal, normal_closure,
    quotient, sdr_report, simple_normal_subgroups, socle, with_inner_operators, GroupKind, Limits, OmegaGroup,
    OmegaMorphism, Operator, Subgroup,
};
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

use GroupKind::*;

fn l() -> Limits {
    Limits::default()
}

/// Small Ω-groups of assorted shapes, all of order at most 12.
fn pool() -> Vec<Arc<OmegaGroup>> {
    let mut out: Vec<Arc<OmegaGroup>> = [
        (Cyclic, 1),
        (Cyclic, 2),
        (Cyclic, 3),
        (Cyclic, 4),
        (Cyclic, 6),
        (Cyclic, 8),
        (Klein4, 4),
        (Symmetric, 3),
        (Dihedral, 4),
        (Dihedral, 5),
        (Dihedral, 6),
        (Alternating, 4),
    ]
    .into_iter()
    .map(|(k, n)| named(k, n))
    .collect();
    out.push(Arc::new(with_inner_operators(&named(Symmetric, 3)).unwrap()));
    out.push(Arc::new(with_inner_operators(&named(Dihedral, 4)).unwrap()));
    out.push(Arc::new(
        named(Klein4, 4)
            .with_operators([Operator::new("r", vec![0, 2, 3, 1])])
            .unwrap(),
    ));
    let c6 = named(Cyclic, 6);
    let inv = c6.inverses().to_vec();
    out.push(Arc::new(c6.with_operators([Operator::new("i", inv)]).unwrap()));
    let c2 = named(Cyclic, 2);
    out.push(direct_product(&[c2.clone(), c2.clone(), c2], &l()).unwrap().product);
    out
}

fn group() -> impl Strategy<Value = Arc<OmegaGroup>> {
    select(pool())
}

/// Tuples of pool groups with equal labels whose product has order at most `cap`.
fn compatible(k: usize, cap: usize) -> Vec<Vec<Arc<OmegaGroup>>> {
    let mut out: Vec<Vec<Arc<OmegaGroup>>> = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                pool().into_iter().filter_map(move |g| {
                    let order: usize = t.iter().map(|h| h.order()).product::<usize>() * g.order();
                    let fits = order <= cap && t.first().is_none_or(|h| h.same_labels(&g));
                    fits.then(|| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                })
            })
            .collect();
    }
    out
}

/// A permutation of `0..n` fixing 0.
fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| {
        let mut p = vec![0];
        p.extend(rest);
        p
    })
}

fn group_and_perm() -> impl Strategy<Value = (Arc<OmegaGroup>, Vec<usize>)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), perm(n))
    })
}

fn group_and_subsets() -> impl Strategy<Value = (Arc<OmegaGroup>, Vec<usize>, Vec<usize>)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        (
            Just(g),
            subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(3)),
            subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(3)),
        )
    })
}

fn is_group_table(t: &[Vec<usize>], ops: &[Operator]) -> bool {
    let n = t.len();
    if n == 0 || t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return false;
    }
    let latin = (0..n).all(|i| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        (0..n).all(|j| !std::mem::replace(&mut row[t[i][j]], true) && !std::mem::replace(&mut col[t[j][i]], true))
    });
    let identity = (0..n).all(|x| t[0][x] == x && t[x][0] == x);
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
    let endo = ops.iter().all(|op| {
        op.action.len() == n
            && op.action.iter().all(|&x| x < n)
            && (0..n).all(|a| (0..n).all(|b| op.action[t[a][b]] == t[op.action[a]][op.action[b]]))
    });
    latin && identity && assoc && endo
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validation_accepts_exactly_the_groups(
        (g, perm) in group_and_perm(),
        row in 0usize..12,
        a in 0usize..12,
        b in 0usize..12,
        touch_op in any::<bool>(),
    ) {
        let n = g.order();
        let mut t = g.rows();
        let mut ops = g.operators().to_vec();
        let (row, a, b) = (row % n, a % n, b % n);
        if touch_op && !ops.is_empty() {
            ops[0].action[a] = perm[ops[0].action[a]];
        } else {
            t[row].swap(a, b);
        }
        let expected = is_group_table(&t, &ops);
        prop_assert_eq!(OmegaGroup::from_table(t, ops).is_ok(), expected);
    }

    #[test]
    fn certificates_are_relabel_invariant((g, perm) in group_and_perm()) {
        let h = Arc::new(relabel(&g, &perm));
        prop_assert_eq!(certificate(&g, &l()).unwrap(), certificate(&h, &l()).unwrap());
        let w = are_isomorphic(&g, &h);
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(w.is_bijective());
        prop_assert!(!all_homs(&g, &h, true, false).is_empty());
        prop_assert!(all_homs(&g, &h, true, false).contains(&w.map().to_vec()));
    }

    #[test]
    fn certificates_decide_isomorphism(g in group(), h in group()) {
        let same_cert = certificate(&g, &l()).unwrap() == certificate(&h, &l()).unwrap();
        let witness = are_isomorphic(&g, &h);
        prop_assert_eq!(same_cert, witness.is_some());
        if g.order() <= 8 && h.order() <= 8 {
            prop_assert_eq!(same_cert, isomorphic(&g, &h));
        }
        if let Some(w) = witness {
            let oracle = all_homs(&g, &h, true, false);
            prop_assert!(oracle.contains(&w.map().to_vec()));
        }
    }

    #[test]
    fn closure_matches_oracle_and_is_idempotent_and_monotone((g, xs, ys) in group_and_subsets()) {
        let hx = generated_subgroup(&g, &xs);
        prop_assert_eq!(mask(hx.members().iter()), closure(&g, &xs));
        let again: Vec<usize> = hx.members().to_vec();
        prop_assert_eq!(&generated_subgroup(&g, &again), &hx);
        let mut both = xs.clone();
        both.extend(&ys);
        prop_assert!(hx.is_subgroup_of(&generated_subgroup(&g, &both)));
    }

    #[test]
    fn normal_closure_is_least_normal_superset((g, xs, _) in group_and_subsets()) {
        let n = normal_closure(&g, &xs);
        let want = mask(xs.iter().copied()) | 1;
        let least = normal_subgroups(&g)
            .into_iter()
            .filter(|m| m & want == want)
            .fold(u64::MAX, |acc, m| acc & m);
        prop_assert_eq!(mask(n.members().iter()), least);
    }

    #[test]
    fn simple_normals_are_normal_and_simple(g in group()) {
        let normals = normal_subgroups(&g);
        for h in simple_normal_subgroups(&g, &l()).unwrap() {
            let m = mask(h.members().iter());
            prop_assert!(normals.contains(&m));
            prop_assert!(!h.is_trivial());
            let e = ogroup_core::embed(&g, h);
            prop_assert_eq!(normal_subgroups(&e.group).len(), 2);
        }
        let soc = socle(&g, &l()).unwrap();
        prop_assert!(is_normal_mask(&g, mask(soc.members().iter())));
    }

    #[test]
    fn quotients_by_extremes(g in group()) {
        let n = g.order();
        let (q, p) = quotient(&g, &Subgroup::trivial(n)).unwrap();
        prop_assert!(are_isomorphic(&g, &q).is_some());
        prop_assert!(p.is_bijective());
        let (q, p) = quotient(&g, &Subgroup::whole(n)).unwrap();
        prop_assert_eq!(q.order(), 1);
        prop_assert!(p.is_null());
    }

    #[test]
    fn quotient_kernel_is_the_normal_subgroup(g in group(), pick in any::<prop::sample::Index>()) {
        let normals = normal_subgroups(&g);
        let m = normals[pick.index(normals.len())];
        let h = Subgroup::new(&g, ogroup_core::ElementSet::from_indices(g.order(), members(m))).unwrap();
        let (q, p) = quotient(&g, &h).unwrap();
        prop_assert_eq!(q.order() * h.order(), g.order());
        prop_assert_eq!(p.kernel(), h);
        prop_assert!(p.is_surjective());
    }

    #[test]
    fn products_associate_and_commute(t in select(compatible(3, 64))) {
        let (a, b, c) = (t[0].clone(), t[1].clone(), t[2].clone());
        let ab = direct_product(&[a.clone(), b.clone()], &l()).unwrap().product;
        let bc = direct_product(&[b.clone(), c.clone()], &l()).unwrap().product;
        let left = direct_product(&[ab, c.clone()], &l()).unwrap().product;
        let right = direct_product(&[a.clone(), bc], &l()).unwrap().product;
        prop_assert!(are_isomorphic(&left, &right).is_some());
        let ba = direct_product(&[b.clone(), a.clone()], &l()).unwrap().product;
        let ab = direct_product(&[a, b], &l()).unwrap().product;
        prop_assert_eq!(certificate(&ab, &l()).ok(), certificate(&ba, &l()).ok());
    }

    #[test]
    fn products_are_functorial(
        t in select(compatible(2, 64).into_iter().filter(|t| t.iter().all(|g| g.order() <= 8)).collect::<Vec<_>>()),
        fa in any::<prop::sample::Index>(), fb in any::<prop::sample::Index>(),
    ) {
        let (a, b) = (t[0].clone(), t[1].clone());
        let ends_a = all_homs(&a, &a, false, false);
        let ends_b = all_homs(&b, &b, false, false);
        let (ma, mb) = (&ends_a[fa.index(ends_a.len())], &ends_b[fb.index(ends_b.len())]);
        let w = direct_product(&[a.clone(), b.clone()], &l()).unwrap();
        let map = w.product.elements().map(|x| {
            let c = w.decode(x);
            w.encode(&[ma[c[0]], mb[c[1]]])
        }).collect();
        let f = OmegaMorphism::new(w.product.clone(), w.product.clone(), map);
        prop_assert!(f.is_ok());
        let f = f.unwrap();
        let fa = OmegaMorphism::new(a.clone(), a.clone(), ma.clone()).unwrap();
        let fb = OmegaMorphism::new(b.clone(), b.clone(), mb.clone()).unwrap();
        prop_assert_eq!(f.then(&w.projections[0]).unwrap(), w.projections[0].then(&fa).unwrap());
        prop_assert_eq!(f.then(&w.projections[1]).unwrap(), w.projections[1].then(&fb).unwrap());
        prop_assert_eq!(w.injections[0].then(&f).unwrap(), fa.then(&w.injections[0]).unwrap());
    }

    #[test]
    fn sdr_report_is_consistent(g in group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let normals = normal_subgroups(&g);
        let family: Vec<Subgroup> = picks
            .iter()
            .map(|i| Subgroup::new(&g, ogroup_core::ElementSet::from_indices(g.order(), members(normals[i.index(normals.len())]))).unwrap())
            .collect();
        let domain: usize = family.iter().map(Subgroup::order).product();
        let r = match sdr_report(&g, &family, &l()) {
            Err(ogroup_core::Error::CapExceeded { .. }) => {
                prop_assert!(domain > l().max_order);
                return Ok(());
            }
            other => other.unwrap(),
        };
        prop_assert_eq!(r.bijective, r.injective && r.surjective);
        prop_assert_eq!(r.theta.is_some(), r.cc_holds);
        // Normal subgroups with pairwise trivial meets commute elementwise, but
        // (CC) fails as soon as a nonabelian member repeats.
        let pairwise_commute = family.iter().enumerate().all(|(i, h)| {
            family[i + 1..].iter().all(|k| {
                h.members().iter().all(|x| k.members().iter().all(|y| g.mul(x, y) == g.mul(y, x)))
            })
        });
        prop_assert_eq!(r.cc_holds, pairwise_commute);
        if r.cc_holds {
            let product: usize = family.iter().map(Subgroup::order).product();
            let union: Vec<usize> = family.iter().flat_map(|h| h.members().to_vec()).collect();
            let span = members(closure(&g, &union)).len();
            prop_assert_eq!(r.injective, span == product);
            prop_assert_eq!(r.surjective, span == g.order());
            if !family.is_empty() {
                prop_assert_eq!(join_normal(&g, &family).unwrap().order(), span);
            }
        }
    }

    #[test]
    fn greedy_yields_a_restricted_direct_sum(
        g in group(),
        f in any::<prop::sample::Index>(),
        seed in any::<u64>(),
    ) {
        let sz = simple_normal_subgroups(&g, &l()).unwrap().to_vec();
        let normals = normal_subgroups(&g);
        let f = Subgroup::new(&g, ogroup_core::ElementSet::from_indices(g.order(), members(normals[f.index(normals.len())]))).unwrap();
        let mut family = sz.clone();
        let mut seed = seed;
        for i in (1..family.len()).rev() {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            family.swap(i, (seed >> 33) as usize % (i + 1));
        }
        let union: Vec<usize> = f.members().iter().chain(family.iter().flat_map(|h| h.members().to_vec())).collect();
        let spans = members(closure(&g, &union)).len() == g.order();
        match greedy_refine(&g, &f, &family, &l()) {
            Ok(kept) => {
                prop_assert!(spans);
                prop_assert!(kept.windows(2).all(|w| w[0] < w[1]));
                // Independent check: orders multiply and everything is generated.
                let total: usize = f.order() * kept.iter().map(|&j| family[j].order()).product::<usize>();
                prop_assert_eq!(total, g.order());
                let chosen: Vec<usize> = f.members().iter().chain(kept.iter().flat_map(|&j| family[j].members().to_vec())).collect();
                prop_assert_eq!(members(closure(&g, &chosen)).len(), g.order());
            }
            Err(ogroup_core::Error::Precondition(_)) => prop_assert!(!spans),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
